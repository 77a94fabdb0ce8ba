#pragma once

#include <map>
#include <span>
#include <vector>

#include "auctionlab/core/rng.hpp"
#include "auctionlab/core/types.hpp"
#include "auctionlab/mechanisms/outcome.hpp"

namespace auctionlab {

// Highest bid at or above the reservation wins and pays its own bid.
AuctionOutcome run_first_price_sealed(std::span<const PriceBid> bids, const License& license,
                                      const RngStream& rng);

// Highest qualifying bid wins and pays max(second-highest bid, reservation).
// A sole qualifying bid pays the reservation, or zero when none is set.
AuctionOutcome run_vickrey_sealed(std::span<const PriceBid> bids, const License& license,
                                  const RngStream& rng);

struct ScoreWeights {
  double fee = 0.72;
  double rollout_speed = 0.15;
  double rural_coverage = 0.10;
  double indigenous_content = 0.03;

  // Throws std::invalid_argument unless all weights are >= 0 and sum to 1
  // within 1e-9.
  void validate() const;
};

struct ScoredBid {
  BidderId bidder;
  LicenseId license;
  ScoredAttributes attributes;
};

// Weighted-score sealed bid. The fee component is normalised by the largest
// qualifying fee; the winner pays its own fee.
AuctionOutcome run_scored_sealed(std::span<const ScoredBid> bids, const ScoreWeights& weights,
                                 const License& license, const RngStream& rng);

double score_bid(const ScoredAttributes& attrs, Money max_fee, const ScoreWeights& weights);

// Walks down the disclosed bid record while the current winner cannot afford
// its required payment. Each defaulter is charged penalty_fraction × bid and
// the next-highest bidder is promoted at its own bid. Bidders missing from
// `ceilings` are treated as unconstrained.
AuctionOutcome resolve_default_cascade(const AuctionOutcome& outcome,
                                       const std::map<BidderId, Money>& ceilings,
                                       double penalty_fraction, const License& license,
                                       const RngStream& rng);

}  // namespace auctionlab
