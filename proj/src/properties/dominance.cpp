#include "auctionlab/properties/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "auctionlab/agents/cashflow.hpp"
#include "auctionlab/core/rng.hpp"
#include "auctionlab/mechanisms/sealed.hpp"
#include "auctionlab/mechanisms/share_auction.hpp"

namespace auctionlab::properties {

namespace {

constexpr std::uint64_t kMaxComparisons = 200'000'000;
const LicenseId kGridLicense{"grid"};
const BidderId kSelf{"self"};

BidderId opponent_id(std::size_t i) { return BidderId("opp" + std::to_string(i + 1)); }

// Calls fn(profile) for every ordered tuple of `levels` with length in
// [min_len, max_len].
template <typename T>
void for_each_profile(const std::vector<T>& levels, std::size_t min_len, std::size_t max_len,
                      const std::function<void(const std::vector<T>&)>& fn) {
  for (std::size_t len = min_len; len <= max_len; ++len) {
    std::vector<std::size_t> idx(len, 0);
    std::vector<T> profile(len);
    while (true) {
      for (std::size_t k = 0; k < len; ++k) profile[k] = levels[idx[k]];
      fn(profile);
      std::size_t k = 0;
      while (k < len && ++idx[k] == levels.size()) idx[k++] = 0;
      if (k == len) break;
    }
  }
}

std::uint64_t profile_count(std::size_t levels, std::size_t min_len, std::size_t max_len) {
  std::uint64_t total = 0;
  for (std::size_t len = min_len; len <= max_len; ++len) {
    std::uint64_t c = 1;
    for (std::size_t k = 0; k < len; ++k) {
      c *= levels;
      if (c > kMaxComparisons) return kMaxComparisons + 1;
    }
    total += c;
  }
  return total;
}

std::vector<Money> money_range(std::int64_t lo, std::int64_t hi, std::int64_t step) {
  std::vector<Money> out;
  for (std::int64_t v = lo; v <= hi; v += step) out.push_back(Money::from_units(v));
  return out;
}

std::vector<Share> share_range(std::int64_t lo_micros, std::int64_t hi_micros, std::int64_t step) {
  std::vector<Share> out;
  for (std::int64_t v = lo_micros; v <= hi_micros; v += step) out.push_back(Share::from_micros(v));
  return out;
}

}  // namespace

std::string_view to_string(Verdict v) {
  return v == Verdict::weakly_dominant ? "weakly-dominant" : "not-dominant";
}

DominanceGrid DominanceGrid::desk_default() {
  DominanceGrid g;
  g.values = money_range(0, 100, 5);
  g.bids = money_range(0, 100, 5);
  g.opponent_bids = money_range(0, 100, 25);
  return g;
}

ExactUtility expected_utility(Mechanism mechanism, Money value, Money bid, std::span<const Money> opponents) {
  if (mechanism != Mechanism::fpsb && mechanism != Mechanism::vickrey) {
    throw std::invalid_argument("dominance enumeration supports fpsb and vickrey, not " +
                                std::string(to_string(mechanism)));
  }
  std::vector<PriceBid> bids;
  bids.push_back({kSelf, kGridLicense, bid});
  for (std::size_t i = 0; i < opponents.size(); ++i) bids.push_back({opponent_id(i), kGridLicense, opponents[i]});

  const License license{kGridLicense, "grid", LicenseGroup::none, std::nullopt};
  const RngStream rng(0);
  const auto outcome = mechanism == Mechanism::fpsb ? run_first_price_sealed(bids, license, rng)
                                                    : run_vickrey_sealed(bids, license, rng);
  if (!outcome.sold()) return {};

  // The tie-break is a lottery over the top group; payment does not depend
  // on which member wins, so expected utility is (value - payment) / k.
  const Money top = std::max_element(bids.begin(), bids.end(), [](const PriceBid& a, const PriceBid& b) {
                      return a.amount < b.amount;
                    })->amount;
  if (bid != top) return {};
  const auto k = std::count_if(bids.begin(), bids.end(), [&](const PriceBid& b) { return b.amount == top; });
  return {signed_difference(value, outcome.payment_money()), static_cast<std::int64_t>(k)};
}

DominanceReport check_weak_dominance(Mechanism mechanism, const DominanceGrid& grid) {
  if (grid.values.empty() || grid.bids.empty()) throw std::invalid_argument("dominance grid must be non-empty");
  if (grid.max_opponents > 0 && grid.opponent_bids.empty()) {
    throw std::invalid_argument("opponent bid grid must be non-empty");
  }
  if (grid.min_opponents > grid.max_opponents) throw std::invalid_argument("min_opponents > max_opponents");
  const std::uint64_t profiles = profile_count(grid.opponent_bids.size(), grid.min_opponents, grid.max_opponents);
  if (profiles > kMaxComparisons ||
      profiles * grid.values.size() * grid.bids.size() > kMaxComparisons) {
    throw std::invalid_argument("dominance grid too large to enumerate");
  }

  DominanceReport report;
  report.mechanism = mechanism;
  for (const Money value : grid.values) {
    for_each_profile<Money>(grid.opponent_bids, grid.min_opponents, grid.max_opponents,
                            [&](const std::vector<Money>& opponents) {
                              const auto truthful = expected_utility(mechanism, value, value, opponents);
                              for (const Money deviation : grid.bids) {
                                ++report.comparisons;
                                const auto dev = expected_utility(mechanism, value, deviation, opponents);
                                if (!(truthful < dev)) continue;
                                report.verdict = Verdict::not_dominant;
                                const double gain = dev.to_double() - truthful.to_double();
                                if (!report.counterexample || gain > report.counterexample->gain) {
                                  report.counterexample = Counterexample{value, deviation, opponents, truthful, dev, gain};
                                }
                              }
                            });
  }
  return report;
}

double replay(Mechanism mechanism, const Counterexample& cex) {
  const auto truthful = expected_utility(mechanism, cex.value, cex.value, cex.opponents);
  const auto dev = expected_utility(mechanism, cex.value, cex.deviation, cex.opponents);
  return dev.to_double() - truthful.to_double();
}

ShareSetting ShareSetting::standard() {
  ShareSetting s;
  s.v_g = Money::from_units(2000);
  s.revenues.assign(30, Money::from_units(100));
  return s;
}

ShareOverbidGrid ShareOverbidGrid::desk_default() {
  ShareOverbidGrid g;
  g.true_shares = share_range(0, 500'000, 50'000);
  g.opponent_shares = share_range(0, 500'000, 100'000);
  return g;
}

double share_bidder_utility(Share true_share, Share bid, std::span<const Share> opponents,
                            const ShareSetting& setting) {
  std::vector<ShareBid> bids;
  bids.push_back({kSelf, kGridLicense, bid});
  for (std::size_t i = 0; i < opponents.size(); ++i) bids.push_back({opponent_id(i), kGridLicense, opponents[i]});

  const auto result = run_share_auction(bids, EscrowedValuation::seal(kGridLicense, setting.v_g), setting.revenues,
                                        RngStream(0));
  const Share top = std::max_element(bids.begin(), bids.end(), [](const ShareBid& a, const ShareBid& b) {
                      return a.share < b.share;
                    })->share;
  if (!result.outcome.sold() || bid != top) return 0.0;
  const auto k = std::count_if(bids.begin(), bids.end(), [&](const ShareBid& b) { return b.share == top; });

  std::vector<Money> payments;
  for (const auto& e : result.schedule->entries) payments.push_back(e.payment);
  const double value = true_share.to_double() * agents::present_value(setting.revenues, setting.rate);
  const double cost = agents::present_value(payments, setting.rate);
  return (value - cost) / static_cast<double>(k);
}

ShareDominanceReport check_no_overbid_incentive_share(const ShareOverbidGrid& grid, const ShareSetting& setting) {
  if (grid.true_shares.empty()) throw std::invalid_argument("share grid must be non-empty");
  if (grid.max_opponents > 0 && grid.opponent_shares.empty()) {
    throw std::invalid_argument("opponent share grid must be non-empty");
  }
  if (grid.min_opponents > grid.max_opponents) throw std::invalid_argument("min_opponents > max_opponents");
  if (!std::isfinite(setting.rate) || setting.rate < 0.0) throw std::invalid_argument("rate must be >= 0");
  const std::uint64_t profiles = profile_count(grid.opponent_shares.size(), grid.min_opponents, grid.max_opponents);
  if (profiles * grid.true_shares.size() * grid.true_shares.size() > kMaxComparisons) {
    throw std::invalid_argument("share grid too large to enumerate");
  }

  ShareDominanceReport report;
  for (const Share s : grid.true_shares) {
    for_each_profile<Share>(grid.opponent_shares, grid.min_opponents, grid.max_opponents,
                            [&](const std::vector<Share>& opponents) {
                              const double truthful = share_bidder_utility(s, s, opponents, setting);
                              for (const Share over : grid.true_shares) {
                                if (over <= s) continue;
                                ++report.comparisons;
                                const double u = share_bidder_utility(s, over, opponents, setting);
                                const double tolerance = 1e-9 * std::max(1.0, std::abs(truthful));
                                if (u <= truthful + tolerance) continue;
                                report.pass = false;
                                const double gain = u - truthful;
                                if (!report.counterexample || gain > report.counterexample->gain) {
                                  report.counterexample = ShareCounterexample{s, over, opponents, truthful, u, gain};
                                }
                              }
                            });
  }
  return report;
}

ShareUnderbidSummary describe_underbidding_share(const ShareOverbidGrid& grid, const ShareSetting& setting) {
  if (grid.true_shares.empty()) throw std::invalid_argument("share grid must be non-empty");
  if (grid.max_opponents > 0 && grid.opponent_shares.empty()) {
    throw std::invalid_argument("opponent share grid must be non-empty");
  }
  if (grid.min_opponents > grid.max_opponents) throw std::invalid_argument("min_opponents > max_opponents");
  if (!std::isfinite(setting.rate) || setting.rate < 0.0) throw std::invalid_argument("rate must be >= 0");
  const std::uint64_t profiles = profile_count(grid.opponent_shares.size(), grid.min_opponents, grid.max_opponents);
  if (profiles * grid.true_shares.size() * grid.true_shares.size() > kMaxComparisons) {
    throw std::invalid_argument("share grid too large to enumerate");
  }

  ShareUnderbidSummary summary;
  for (const Share s : grid.true_shares) {
    for_each_profile<Share>(grid.opponent_shares, grid.min_opponents, grid.max_opponents,
                            [&](const std::vector<Share>& opponents) {
                              const double truthful = share_bidder_utility(s, s, opponents, setting);
                              for (const Share under : grid.true_shares) {
                                if (under >= s) continue;
                                ++summary.comparisons;
                                const double u = share_bidder_utility(s, under, opponents, setting);
                                const double tolerance = 1e-9 * std::max(1.0, std::abs(truthful));
                                if (u <= truthful + tolerance) continue;
                                ++summary.profitable;
                                const double gain = u - truthful;
                                if (!summary.counterexample || gain > summary.counterexample->gain) {
                                  summary.counterexample = ShareCounterexample{s, under, opponents, truthful, u, gain};
                                }
                              }
                            });
  }
  return summary;
}

double replay(const ShareCounterexample& cex, const ShareSetting& setting) {
  return share_bidder_utility(cex.true_share, cex.overbid, cex.opponents, setting) -
         share_bidder_utility(cex.true_share, cex.true_share, cex.opponents, setting);
}

}  // namespace auctionlab::properties
