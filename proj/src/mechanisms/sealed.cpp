#include "auctionlab/mechanisms/sealed.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "auctionlab/core/ranking.hpp"

namespace auctionlab {

namespace {

template <typename Bid>
void require_license(std::span<const Bid> bids, const License& license) {
  for (const auto& b : bids) {
    if (b.license != license.id) {
      throw std::invalid_argument("bid from '" + b.bidder.value + "' references license '" +
                                  b.license.value + "', expected '" + license.id.value + "'");
    }
  }
}

std::vector<PriceBid> qualifying(std::span<const PriceBid> bids, const License& license) {
  std::vector<PriceBid> out;
  for (const auto& b : bids) {
    if (!license.reservation || b.amount >= *license.reservation) out.push_back(b);
  }
  return out;
}

AuctionOutcome sealed_skeleton(Mechanism mech, std::span<const PriceBid> bids, const License& license) {
  AuctionOutcome out;
  out.mechanism = mech;
  out.license = license.id;
  out.all_bids.reserve(bids.size());
  for (const auto& b : bids) out.all_bids.push_back({b.bidder, b.amount, 1, std::nullopt});
  return out;
}

}  // namespace

AuctionOutcome run_first_price_sealed(std::span<const PriceBid> bids, const License& license,
                                      const RngStream& rng) {
  require_license(bids, license);
  auto out = sealed_skeleton(Mechanism::fpsb, bids, license);
  const auto eligible = qualifying(bids, license);
  const auto ranking = rank_bids(eligible);
  if (ranking.empty()) return out;

  const auto& top = ranking.groups.front();
  const auto& winner = break_tie(top, tie_stream(rng, license.id));
  out.tie_broken = top.size() > 1;
  out.winner = winner.bid.bidder;
  out.winning_bid = winner.bid.amount;
  out.payment = winner.bid.amount;
  return out;
}

AuctionOutcome run_vickrey_sealed(std::span<const PriceBid> bids, const License& license,
                                  const RngStream& rng) {
  require_license(bids, license);
  auto out = sealed_skeleton(Mechanism::vickrey, bids, license);
  const auto eligible = qualifying(bids, license);
  const auto ranking = rank_bids(eligible);
  if (ranking.empty()) return out;

  const auto& top = ranking.groups.front();
  const auto& winner = break_tie(top, tie_stream(rng, license.id));
  out.tie_broken = top.size() > 1;

  Money second;
  if (top.size() > 1) {
    second = top.front().bid.amount;
  } else if (ranking.groups.size() > 1) {
    second = ranking.groups[1].front().bid.amount;
  }
  const Money floor = license.reservation.value_or(Money{});
  out.winner = winner.bid.bidder;
  out.winning_bid = winner.bid.amount;
  out.payment = std::max(second, floor);
  return out;
}

void ScoreWeights::validate() const {
  for (double w : {fee, rollout_speed, rural_coverage, indigenous_content}) {
    if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("score weights must be finite and >= 0");
  }
  const double sum = fee + rollout_speed + rural_coverage + indigenous_content;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("score weights must sum to 1 (got " + std::to_string(sum) + ")");
  }
}

double score_bid(const ScoredAttributes& attrs, Money max_fee, const ScoreWeights& weights) {
  const double fee_norm =
      max_fee.is_zero() ? 0.0 : static_cast<double>(attrs.license_fee.cents()) / static_cast<double>(max_fee.cents());
  return weights.fee * fee_norm + weights.rollout_speed * attrs.rollout_speed +
         weights.rural_coverage * attrs.rural_coverage + weights.indigenous_content * attrs.indigenous_content;
}

AuctionOutcome run_scored_sealed(std::span<const ScoredBid> bids, const ScoreWeights& weights,
                                 const License& license, const RngStream& rng) {
  weights.validate();
  require_license(bids, license);
  for (const auto& b : bids) {
    const auto v = b.attributes.violations();
    if (!v.empty()) throw std::invalid_argument("bid from '" + b.bidder.value + "': " + v.front());
  }

  AuctionOutcome out;
  out.mechanism = Mechanism::scored;
  out.license = license.id;

  auto qualifies = [&](const ScoredBid& b) {
    return !license.reservation || b.attributes.license_fee >= *license.reservation;
  };
  Money max_fee;
  for (const auto& b : bids) {
    if (qualifies(b)) max_fee = std::max(max_fee, b.attributes.license_fee);
  }

  std::vector<std::size_t> best;
  double best_score = -1.0;
  for (std::size_t i = 0; i < bids.size(); ++i) {
    const auto& b = bids[i];
    std::optional<double> score;
    if (qualifies(b)) {
      score = score_bid(b.attributes, max_fee, weights);
      if (*score > best_score) {
        best_score = *score;
        best.clear();
      }
      if (*score == best_score) best.push_back(i);
    }
    out.all_bids.push_back({b.bidder, b.attributes.license_fee, 1, score});
  }
  if (best.empty()) return out;

  const std::size_t pick = best[break_tie_index(best.size(), tie_stream(rng, license.id))];
  out.tie_broken = best.size() > 1;
  out.winner = bids[pick].bidder;
  out.winning_bid = bids[pick].attributes.license_fee;
  out.payment = bids[pick].attributes.license_fee;
  return out;
}

AuctionOutcome resolve_default_cascade(const AuctionOutcome& outcome,
                                       const std::map<BidderId, Money>& ceilings,
                                       double penalty_fraction, const License& license,
                                       const RngStream& rng) {
  if (!std::isfinite(penalty_fraction) || penalty_fraction < 0.0 || penalty_fraction > 1.0) {
    throw std::invalid_argument("penalty fraction must lie in [0, 1]");
  }
  if (!is_price_mechanism(outcome.mechanism)) {
    throw std::invalid_argument("default cascade requires a price mechanism outcome");
  }
  AuctionOutcome out = outcome;
  if (!out.sold()) return out;

  // Each bidder's best disclosed bid, in first-appearance order.
  std::vector<PriceBid> best_bids;
  for (const auto& d : out.all_bids) {
    const Money amount = std::get<Money>(d.amount);
    auto it = std::find_if(best_bids.begin(), best_bids.end(),
                           [&](const PriceBid& b) { return b.bidder == d.bidder; });
    if (it == best_bids.end()) {
      best_bids.push_back({d.bidder, license.id, amount});
    } else {
      it->amount = std::max(it->amount, amount);
    }
  }

  std::set<BidderId> defaulted;
  BidderId current = *out.winner;
  Money required = out.payment_money();
  Money bid = out.winning_bid_money();
  for (std::uint64_t step = 0;; ++step) {
    const auto ceiling = ceilings.find(current);
    if (ceiling == ceilings.end() || required <= ceiling->second) break;

    out.default_trace.push_back({current, bid, scale(bid, penalty_fraction)});
    defaulted.insert(current);

    std::vector<PriceBid> remaining;
    for (const auto& b : best_bids) {
      if (defaulted.count(b.bidder)) continue;
      if (license.reservation && b.amount < *license.reservation) continue;
      remaining.push_back(b);
    }
    const auto ranking = rank_bids(remaining);
    if (ranking.empty()) {
      out.winner.reset();
      out.payment.reset();
      out.winning_bid.reset();
      return out;
    }
    const auto& top = ranking.groups.front();
    const auto& next = break_tie(top, tie_stream(rng, license.id).derive("cascade").derive(step));
    out.tie_broken = out.tie_broken || top.size() > 1;
    current = next.bid.bidder;
    bid = next.bid.amount;
    required = next.bid.amount;
  }
  out.winner = current;
  out.winning_bid = bid;
  out.payment = required;
  return out;
}

}  // namespace auctionlab
