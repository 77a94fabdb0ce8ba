#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "auctionlab/core/rng.hpp"
#include "auctionlab/core/types.hpp"
#include "auctionlab/mechanisms/outcome.hpp"

namespace auctionlab {

struct SamrIncrement {
  enum class Kind { absolute, fraction };

  Kind kind = Kind::absolute;
  Money absolute = Money::from_units(1);
  // Fraction of the standing high bid; the step never drops below one cent.
  double fraction = 0.0;

  static SamrIncrement fixed(Money step) { return {Kind::absolute, step, 0.0}; }
  static SamrIncrement proportional(double f) { return {Kind::fraction, Money{}, f}; }

  Money step_above(Money standing) const;
};

enum class ActivityRule { none, must_act_each_round };

struct SamrConfig {
  SamrIncrement increment;
  ActivityRule activity = ActivityRule::none;
  std::uint32_t max_rounds = 1000;
  // Minimum first bid on a license without a reservation.
  Money opening_bid;

  // Throws std::invalid_argument when increment <= 0 or max_rounds == 0.
  void validate() const;
};

// Straightforward bidder with additive per-license values.
struct SamrAgent {
  BidderId id;
  std::map<LicenseId, Money> values;
};

struct SamrRoundBid {
  BidderId bidder;
  LicenseId license;
  Money amount;
  bool accepted = false;  // became the standing high bid
};

struct SamrRound {
  std::uint32_t round = 0;
  std::vector<SamrRoundBid> bids;
};

struct SamrResult {
  std::vector<AuctionOutcome> outcomes;  // one per license, input order
  std::vector<SamrRound> round_log;
  std::uint32_t rounds_used = 0;
  bool terminated = true;
};

// Simultaneous ascending multiple-round auction. Each round, every eligible
// agent picks the license (among those where it is not the standing high
// bidder) that maximises value - required price and bids the required price
// if that surplus is non-negative. Equal bids on a license within a round
// are resolved by a seeded draw. The auction closes after the first round
// with no new bids; rounds_used counts that closing round.
SamrResult run_samr(std::span<const SamrAgent> agents, std::span<const License> licenses,
                    const SamrConfig& config, const RngStream& rng);

}  // namespace auctionlab
