#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "auctionlab/core/types.hpp"
#include "auctionlab/mechanisms/outcome.hpp"

namespace auctionlab::properties {

// Expected utility as an exact fraction of cents: numerator / denominator,
// denominator > 0 (the size of the winning tie group).
struct ExactUtility {
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;

  double to_double() const { return static_cast<double>(numerator) / 100.0 / static_cast<double>(denominator); }
  friend bool operator<(const ExactUtility& a, const ExactUtility& b) {
    return static_cast<__int128>(a.numerator) * b.denominator < static_cast<__int128>(b.numerator) * a.denominator;
  }
};

struct DominanceGrid {
  std::vector<Money> values;
  std::vector<Money> bids;
  std::vector<Money> opponent_bids;
  std::size_t min_opponents = 1;
  std::size_t max_opponents = 2;

  // 21 values and 21 bids on [0, 100] in steps of 5; opponents bid from
  // {0, 25, 50, 75, 100}; one or two opponents.
  static DominanceGrid desk_default();
};

enum class Verdict { weakly_dominant, not_dominant };
std::string_view to_string(Verdict v);

struct Counterexample {
  Money value;
  Money deviation;
  std::vector<Money> opponents;
  ExactUtility truthful_utility;
  ExactUtility deviation_utility;
  double gain = 0.0;
};

struct DominanceReport {
  Mechanism mechanism = Mechanism::vickrey;
  Verdict verdict = Verdict::weakly_dominant;
  std::optional<Counterexample> counterexample;  // largest gain found
  std::uint64_t comparisons = 0;
};

// Expected utility of bidding `bid` with private value `value` against the
// given opponent bids, ties resolved uniformly. Supports fpsb and vickrey.
ExactUtility expected_utility(Mechanism mechanism, Money value, Money bid, std::span<const Money> opponents);

// Exhaustive check that bidding one's value is weakly dominant on the grid.
// Throws std::invalid_argument on empty grids, an unsupported mechanism, or
// a grid too large to enumerate.
DominanceReport check_weak_dominance(Mechanism mechanism, const DominanceGrid& grid);

// Re-evaluates a counterexample from scratch; returns the utility gain.
double replay(Mechanism mechanism, const Counterexample& cex);

// --- share auction: one-sided (overbidding) check ----------------------------

struct ShareSetting {
  Money v_g;
  std::vector<Money> revenues;
  double rate = 0.0;

  // 30 periods of revenue 100, V_g = 2000, undiscounted.
  static ShareSetting standard();
};

struct ShareOverbidGrid {
  std::vector<Share> true_shares;
  std::vector<Share> opponent_shares;
  std::size_t min_opponents = 1;
  std::size_t max_opponents = 2;

  // True shares 0.00..0.50 step 0.05; opponents 0.00..0.50 step 0.10.
  static ShareOverbidGrid desk_default();
};

struct ShareCounterexample {
  Share true_share;
  Share overbid;
  std::vector<Share> opponents;
  double truthful_utility = 0.0;
  double overbid_utility = 0.0;
  double gain = 0.0;
};

struct ShareDominanceReport {
  bool pass = true;
  std::optional<ShareCounterexample> counterexample;  // largest gain found
  std::uint64_t comparisons = 0;
};

// A bidder whose true share is s values the license at s × PV(revenues): the
// most it would give up over the full project life. Winning at paid share p
// costs the PV of the capped payment schedule at p.
double share_bidder_utility(Share true_share, Share bid, std::span<const Share> opponents,
                            const ShareSetting& setting);

ShareDominanceReport check_no_overbid_incentive_share(const ShareOverbidGrid& grid, const ShareSetting& setting);

double replay(const ShareCounterexample& cex, const ShareSetting& setting);

// The other direction, bidding below one's true share. Descriptive only: no
// verdict is attached. `counterexample` holds the most profitable underbid.
struct ShareUnderbidSummary {
  std::uint64_t comparisons = 0;
  std::uint64_t profitable = 0;
  std::optional<ShareCounterexample> counterexample;
};

ShareUnderbidSummary describe_underbidding_share(const ShareOverbidGrid& grid, const ShareSetting& setting);

}  // namespace auctionlab::properties
