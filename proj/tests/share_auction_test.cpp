#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "auctionlab/core/rng.hpp"
#include "auctionlab/mechanisms/share_auction.hpp"
#include "gen.hpp"

using namespace auctionlab;

namespace {

const LicenseId kL("L1");

std::vector<ShareBid> share_bids(std::initializer_list<double> xs) {
  std::vector<ShareBid> out;
  std::size_t i = 0;
  for (double x : xs) out.push_back({gen::bidder(i++), kL, Share::from_double(x)});
  return out;
}

std::vector<Money> flat(std::size_t periods, std::int64_t units) {
  return std::vector<Money>(periods, Money::from_units(units));
}

}  // namespace

TEST(ShareAuction, WinnerPaysSecondShare) {
  const auto revenues = flat(30, 100);
  const auto r = run_share_auction(share_bids({0.08, 0.12, 0.05}), EscrowedValuation::seal(kL, Money::from_units(200)),
                                   revenues, RngStream(0));
  EXPECT_EQ(r.outcome.winner->value, "b1");
  EXPECT_EQ(r.outcome.winning_bid_share(), Share::from_double(0.12));
  EXPECT_EQ(r.outcome.payment_share(), Share::from_double(0.08));
  ASSERT_TRUE(r.schedule.has_value());
  // 8 per period; 200 is reached after 25 periods.
  EXPECT_EQ(r.schedule->entries.size(), 25u);
  EXPECT_TRUE(r.schedule->complete);
  EXPECT_EQ(r.schedule->cumulative(), Money::from_units(200));
  EXPECT_TRUE(r.escrow.revealed());
  EXPECT_EQ(r.escrow.revealed_value(), Money::from_units(200));
}

TEST(ShareAuction, SoleBidderPaysNothing) {
  const auto r = run_share_auction(share_bids({0.3}), EscrowedValuation::seal(kL, Money::from_units(10)), flat(5, 100),
                                   RngStream(0));
  EXPECT_EQ(r.outcome.payment_share(), Share::zero());
  EXPECT_FALSE(r.schedule->complete);
  EXPECT_EQ(r.schedule->shortfall, Money::from_units(10));
}

TEST(ShareAuction, EscrowStaysSealedWithoutBids) {
  const auto escrow = EscrowedValuation::seal(kL, Money::from_units(10));
  EXPECT_FALSE(escrow.revealed_value().has_value());
  const auto r = run_share_auction({}, escrow, flat(5, 100), RngStream(0));
  EXPECT_FALSE(r.outcome.sold());
  EXPECT_FALSE(r.escrow.revealed());
  EXPECT_FALSE(r.schedule.has_value());
}

TEST(ShareAuction, TopTiePaysTheTiedShare) {
  const auto r = run_share_auction(share_bids({0.2, 0.2}), EscrowedValuation::seal(kL, Money::from_units(10)),
                                   flat(5, 100), RngStream(3));
  EXPECT_TRUE(r.outcome.tie_broken);
  EXPECT_EQ(r.outcome.payment_share(), Share::from_double(0.2));
}

TEST(PaymentSchedule, FinalPeriodIsProRated) {
  const auto s = compute_payment_schedule(Share::from_double(0.1), flat(10, 100), Money::from_units(55));
  ASSERT_EQ(s.entries.size(), 6u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(s.entries[i].payment, Money::from_units(10));
  EXPECT_EQ(s.entries[5].payment, Money::from_units(5));
  EXPECT_EQ(s.entries[5].period, 6u);
  EXPECT_TRUE(s.complete);
  EXPECT_EQ(s.shortfall, Money{});
}

TEST(PaymentSchedule, ZeroValuationIsPaidImmediately) {
  const auto s = compute_payment_schedule(Share::from_double(0.1), flat(10, 100), Money{});
  EXPECT_TRUE(s.complete);
  EXPECT_TRUE(s.entries.empty());
}

TEST(PaymentSchedule, ZeroRevenuePaysNothing) {
  const auto s = compute_payment_schedule(Share::from_double(0.5), flat(10, 0), Money::from_units(5));
  EXPECT_FALSE(s.complete);
  EXPECT_EQ(s.cumulative(), Money{});
  EXPECT_EQ(s.shortfall, Money::from_units(5));
}

TEST(PaymentScheduleProperty, CumulativeIsCappedShareOfRevenue) {
  gen::Gen g(55);
  for (int k = 0; k < 5000; ++k) {
    const Share share = g.share();
    const auto revenues = g.revenues(60, 1'000'000);
    const Money v_g = g.money(20'000'000);
    const auto s = compute_payment_schedule(share, revenues, v_g);

    Money running_revenue;
    Money running_paid;
    for (std::size_t t = 0; t < s.entries.size(); ++t) {
      const auto& e = s.entries[t];
      ASSERT_EQ(e.period, t + 1);
      ASSERT_EQ(e.revenue, revenues[t]);
      running_revenue += e.revenue;
      running_paid += e.payment;
      // Carried rounding: every prefix is exact.
      ASSERT_EQ(running_paid, std::min(v_g, apply_share(share, running_revenue))) << k;
      const double ideal = share.to_double() * e.revenue.to_double();
      if (t + 1 < s.entries.size()) {
        ASSERT_LE(std::fabs(e.payment.to_double() - ideal), 0.01 + 1e-9);
      }
    }
    Money total;
    for (const auto& r : revenues) total += r;
    const Money expected = std::min(v_g, apply_share(share, total));
    ASSERT_EQ(s.cumulative(), expected);
    ASSERT_EQ(s.complete, expected == v_g);
    ASSERT_EQ(s.shortfall, v_g - expected);
    if (s.complete && !s.entries.empty()) {
      // Stops in the period that pays the valuation off.
      Money before;
      for (std::size_t t = 0; t + 1 < s.entries.size(); ++t) before += s.entries[t].payment;
      ASSERT_LT(before, v_g);
    }
  }
}

TEST(ShareAuctionProperty, WinnerHoldsTopShareAndPaysSecond) {
  gen::Gen g(56);
  for (int k = 0; k < 3000; ++k) {
    std::vector<ShareBid> bids;
    const std::size_t n = g.size(1, 6);
    for (std::size_t i = 0; i < n; ++i) {
      bids.push_back({gen::bidder(i), kL, g.coin() ? g.share() : Share::from_micros(g.integer(0, 4) * 100'000)});
    }
    const auto r = run_share_auction(bids, EscrowedValuation::seal(kL, g.money(1'000'000)), g.revenues(20, 100'000),
                                     RngStream(static_cast<std::uint64_t>(k)));
    std::vector<Share> sorted;
    for (const auto& b : bids) sorted.push_back(b.share);
    std::sort(sorted.rbegin(), sorted.rend());
    ASSERT_TRUE(r.outcome.sold());
    ASSERT_EQ(r.outcome.winning_bid_share(), sorted[0]);
    ASSERT_EQ(r.outcome.payment_share(), n > 1 ? sorted[1] : Share::zero());
    const auto w = std::find_if(bids.begin(), bids.end(), [&](const auto& b) { return b.bidder == *r.outcome.winner; });
    ASSERT_EQ(w->share, sorted[0]);
    ASSERT_EQ(r.outcome.all_bids.size(), n);
    ASSERT_EQ(r.schedule->share_paid, r.outcome.payment_share());
  }
}
