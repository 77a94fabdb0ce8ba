#include "auctionlab/mechanisms/share_auction.hpp"

#include <algorithm>
#include <stdexcept>

#include "auctionlab/core/ranking.hpp"

namespace auctionlab {

Money PaymentSchedule::cumulative() const {
  Money total;
  for (const auto& e : entries) total += e.payment;
  return total;
}

PaymentSchedule compute_payment_schedule(Share share, std::span<const Money> revenues, Money v_g) {
  PaymentSchedule out;
  out.share_paid = share;
  Money revenue_so_far;
  Money paid;
  if (v_g.is_zero()) {
    out.complete = true;
    return out;
  }
  for (std::size_t t = 0; t < revenues.size(); ++t) {
    revenue_so_far += revenues[t];
    const Money target = std::min(v_g, apply_share(share, revenue_so_far));
    out.entries.push_back({t + 1, revenues[t], target - paid});
    paid = target;
    if (paid == v_g) {
      out.complete = true;
      break;
    }
  }
  out.shortfall = v_g - paid;
  return out;
}

ShareAuctionResult run_share_auction(std::span<const ShareBid> bids, EscrowedValuation escrow,
                                     std::span<const Money> revenues, const RngStream& rng) {
  for (const auto& b : bids) {
    if (b.license != escrow.license()) {
      throw std::invalid_argument("share bid from '" + b.bidder.value + "' references license '" +
                                  b.license.value + "', escrow is for '" + escrow.license().value + "'");
    }
  }

  AuctionOutcome out;
  out.mechanism = Mechanism::share;
  out.license = escrow.license();
  for (const auto& b : bids) out.all_bids.push_back({b.bidder, b.share, 1, std::nullopt});

  const auto ranking = rank_bids(bids);
  if (ranking.empty()) return {std::move(out), std::move(escrow), std::nullopt};

  const auto& top = ranking.groups.front();
  const auto& winner = break_tie(top, tie_stream(rng, escrow.license()));
  out.tie_broken = top.size() > 1;
  Share second = Share::zero();
  if (top.size() > 1) {
    second = top.front().bid.share;
  } else if (ranking.groups.size() > 1) {
    second = ranking.groups[1].front().bid.share;
  }
  out.winner = winner.bid.bidder;
  out.winning_bid = winner.bid.share;
  out.payment = second;

  escrow.revealed_ = true;
  auto schedule = compute_payment_schedule(second, revenues, escrow.v_g_);
  return {std::move(out), std::move(escrow), std::move(schedule)};
}

}  // namespace auctionlab
