#include "auctionlab/agents/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "auctionlab/core/rng.hpp"

namespace auctionlab::agents {

namespace {

constexpr int kCorrectionDraws = 100'000;
constexpr std::uint64_t kCorrectionSeed = 0x636f7272656374ULL;
constexpr int kSimpsonIntervals = 4096;

// E[exp(-a (V - lo))] for V uniform on [lo, hi], composite Simpson.
double uniform_shifted_mgf(double lo, double hi, double a) {
  const double width = hi - lo;
  const double h = width / kSimpsonIntervals;
  double sum = 1.0 + std::exp(-a * width);
  for (int i = 1; i < kSimpsonIntervals; ++i) {
    sum += (i % 2 == 1 ? 4.0 : 2.0) * std::exp(-a * h * i);
  }
  return sum * h / 3.0 / width;
}

}  // namespace

Money truthful_bid(Money value) { return value; }

Money shaded_bid(Money value, double shading) {
  if (!std::isfinite(shading) || shading < 0.0 || shading >= 1.0) {
    throw std::invalid_argument("shading must lie in [0, 1)");
  }
  return scale(value, 1.0 - shading);
}

double equilibrium_fpsb_bid(double value, int bidders) {
  if (bidders < 2) throw std::invalid_argument("equilibrium_fpsb_bid requires at least 2 bidders");
  return static_cast<double>(bidders - 1) / bidders * value;
}

Money budget_constrained_bid(Money value, Money budget) { return std::min(value, budget); }

double certainty_equivalent(const ValueDistribution& dist, double a) {
  if (!std::isfinite(a) || a < 0.0) throw std::invalid_argument("risk coefficient must be >= 0");
  if (const auto v = dist.violations(); !v.empty()) throw std::invalid_argument(v.front());
  using Family = ValueDistribution::Family;
  if (dist.family == Family::point || dist.degenerate()) return dist.mean();
  if (a == 0.0) return dist.mean();

  double ce = 0.0;
  if (dist.family == Family::normal) {
    ce = dist.first - 0.5 * a * dist.second * dist.second;
  } else {
    const double m = uniform_shifted_mgf(dist.first, dist.second, a);
    if (!std::isfinite(m) || m <= 0.0) throw std::domain_error("moment generating integral is not finite");
    ce = dist.first - std::log(m) / a;
  }
  if (!std::isfinite(ce)) throw std::domain_error("moment generating integral is not finite");
  return ce;
}

Money certainty_equivalent_bid(const ValueDistribution& dist, double risk_coefficient) {
  return Money::from_double(std::max(0.0, certainty_equivalent(dist, risk_coefficient)));
}

double expected_max_standard_normal(int n) {
  if (n < 1) throw std::invalid_argument("expected_max_standard_normal requires n >= 1");
  if (n == 1) return 0.0;
  static std::mutex mutex;
  static std::map<int, double> table;
  std::lock_guard lock(mutex);
  if (auto it = table.find(n); it != table.end()) return it->second;

  RngStream rng = RngStream(kCorrectionSeed).derive("max-normal").derive(static_cast<std::uint64_t>(n));
  double total = 0.0;
  for (int i = 0; i < kCorrectionDraws; ++i) {
    double best = rng.normal(0.0, 1.0);
    for (int j = 1; j < n; ++j) best = std::max(best, rng.normal(0.0, 1.0));
    total += best;
  }
  const double estimate = total / kCorrectionDraws;
  table.emplace(n, estimate);
  return estimate;
}

double common_value_correction(int bidders, double noise_sd) {
  if (bidders < 1) throw std::invalid_argument("common-value bidding requires at least 1 bidder");
  if (!std::isfinite(noise_sd) || noise_sd < 0.0) throw std::invalid_argument("noise sd must be >= 0");
  if (bidders == 1 || noise_sd == 0.0) return 0.0;
  return noise_sd * expected_max_standard_normal(bidders);
}

Money common_value_bid(Money signal, CommonValueMode mode, int bidders, double noise_sd) {
  const double correction = common_value_correction(bidders, noise_sd);
  if (mode == CommonValueMode::naive) return signal;
  return Money::from_double(std::max(0.0, signal.to_double() - correction));
}

}  // namespace auctionlab::agents
