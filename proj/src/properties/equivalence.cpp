#include "auctionlab/properties/equivalence.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "auctionlab/montecarlo/trials.hpp"

namespace auctionlab::properties {

namespace {

// Values are drawn on [0, kUnits] and results divided back, so cent rounding
// of bids (up to half a cent per bid) stays far below the standard error.
constexpr double kUnits = 1e6;

montecarlo::Scenario uniform_scenario(Mechanism mechanism, int bidders, Strategy strategy, std::uint64_t trials) {
  montecarlo::Scenario s;
  s.mechanism = mechanism;
  s.licenses.push_back({LicenseId("L1"), "uniform private values", LicenseGroup::none, std::nullopt});
  for (int i = 0; i < bidders; ++i) {
    BidderProfile p;
    p.id = BidderId("b" + std::to_string(i + 1));
    p.value_model = DistributedValue{ValueDistribution::uniform(0.0, kUnits)};
    p.strategy = strategy;
    s.bidders.push_back(std::move(p));
  }
  s.trials = trials;
  return s;
}

}  // namespace

RevenueEquivalenceResult revenue_equivalence_test(int bidders, std::uint64_t trials, std::uint64_t seed,
                                                  double vickrey_shading, unsigned threads) {
  if (bidders < 2) throw std::invalid_argument("revenue equivalence needs at least 2 bidders");
  if (trials < 2) throw std::invalid_argument("revenue equivalence needs at least 2 trials");

  montecarlo::RunOptions opts;
  opts.seed = seed;
  opts.threads = threads;

  const Strategy vickrey_strategy =
      vickrey_shading > 0.0 ? Strategy{StrategyKind::shaded, vickrey_shading} : Strategy{StrategyKind::truthful, 0.0};
  const auto fpsb = montecarlo::run_trials(
      uniform_scenario(Mechanism::fpsb, bidders, {StrategyKind::fpsb_equilibrium, 0.0}, trials), opts);
  const auto vickrey =
      montecarlo::run_trials(uniform_scenario(Mechanism::vickrey, bidders, vickrey_strategy, trials), opts);

  RevenueEquivalenceResult r;
  r.bidders = bidders;
  r.trials = trials;
  r.expected = static_cast<double>(bidders - 1) / static_cast<double>(bidders + 1);
  r.mean_fpsb = fpsb.summary.mean_revenue / kUnits;
  r.se_fpsb = fpsb.summary.revenue_se / kUnits;
  r.mean_vickrey = vickrey.summary.mean_revenue / kUnits;
  r.se_vickrey = vickrey.summary.revenue_se / kUnits;
  r.pooled_se = std::sqrt(r.se_fpsb * r.se_fpsb + r.se_vickrey * r.se_vickrey);
  r.pass = std::abs(r.mean_fpsb - r.mean_vickrey) <= 3.0 * r.pooled_se &&
           std::abs(r.mean_fpsb - r.expected) <= 3.0 * r.se_fpsb &&
           std::abs(r.mean_vickrey - r.expected) <= 3.0 * r.se_vickrey;
  return r;
}

}  // namespace auctionlab::properties
