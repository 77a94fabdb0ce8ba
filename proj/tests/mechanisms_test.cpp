#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "auctionlab/core/rng.hpp"
#include "auctionlab/mechanisms/outcome.hpp"
#include "auctionlab/mechanisms/sealed.hpp"
#include "gen.hpp"

using namespace auctionlab;

namespace {

const LicenseId kL("L1");
const License kPlain{kL, "plain", LicenseGroup::none, std::nullopt};

std::vector<PriceBid> bids_of(std::initializer_list<std::pair<const char*, std::int64_t>> xs) {
  std::vector<PriceBid> out;
  for (const auto& [id, units] : xs) out.push_back({BidderId(id), kL, Money::from_units(units)});
  return out;
}

License with_reservation(std::int64_t units) { return {kL, "reserved", LicenseGroup::none, Money::from_units(units)}; }

}  // namespace

TEST(Vickrey, TenFifteenTwentyMillion) {
  const auto bids = bids_of({{"A", 10'000'000}, {"B", 15'000'000}, {"C", 20'000'000}});
  const auto out = run_vickrey_sealed(bids, kPlain, RngStream(1));
  ASSERT_TRUE(out.sold());
  EXPECT_EQ(out.winner->value, "C");
  EXPECT_EQ(out.payment_money(), Money::from_units(15'000'000));
  EXPECT_EQ(out.winning_bid_money(), Money::from_units(20'000'000));
  EXPECT_EQ(out.all_bids.size(), 3u);
  EXPECT_FALSE(out.tie_broken);
}

TEST(Vickrey, NewZealandSecondPrice) {
  const auto out = run_vickrey_sealed(bids_of({{"x", 100'000}, {"y", 6}}), kPlain, RngStream(0));
  EXPECT_EQ(out.payment_money(), Money::from_units(6));
  EXPECT_EQ(out.winning_bid_money() - out.payment_money(), Money::from_units(99'994));
}

TEST(Vickrey, SoleBidderPaysReservationOrZero) {
  const auto solo = bids_of({{"only", 50'000}});
  EXPECT_EQ(run_vickrey_sealed(solo, with_reservation(20'000), RngStream(0)).payment_money(),
            Money::from_units(20'000));
  EXPECT_EQ(run_vickrey_sealed(solo, kPlain, RngStream(0)).payment_money(), Money{});
}

TEST(Vickrey, PaymentRisesToReservation) {
  const auto out = run_vickrey_sealed(bids_of({{"a", 100}, {"b", 30}}), with_reservation(50), RngStream(0));
  EXPECT_EQ(out.winner->value, "a");
  EXPECT_EQ(out.payment_money(), Money::from_units(50));
}

TEST(Vickrey, TopTiePaysTheTiedAmount) {
  std::set<std::string> winners;
  for (std::uint64_t s = 0; s < 64; ++s) {
    const auto out = run_vickrey_sealed(bids_of({{"a", 40}, {"b", 40}, {"c", 10}}), kPlain, RngStream(s));
    EXPECT_TRUE(out.tie_broken);
    EXPECT_EQ(out.payment_money(), Money::from_units(40));
    winners.insert(out.winner->value);
  }
  EXPECT_EQ(winners, (std::set<std::string>{"a", "b"}));
}

TEST(FirstPrice, WinnerPaysOwnBid) {
  const auto out = run_first_price_sealed(bids_of({{"A", 10}, {"B", 15}, {"C", 20}}), kPlain, RngStream(0));
  EXPECT_EQ(out.winner->value, "C");
  EXPECT_EQ(out.payment_money(), Money::from_units(20));
}

TEST(FirstPrice, BidsBelowReservationCannotWin) {
  const auto out = run_first_price_sealed(bids_of({{"a", 10}, {"b", 19}}), with_reservation(20), RngStream(0));
  EXPECT_FALSE(out.sold());
  EXPECT_FALSE(out.payment.has_value());
  EXPECT_EQ(out.all_bids.size(), 2u);
}

TEST(FirstPrice, NoBidsIsUnsold) {
  const auto out = run_first_price_sealed({}, kPlain, RngStream(0));
  EXPECT_FALSE(out.sold());
  EXPECT_TRUE(out.all_bids.empty());
  EXPECT_THROW(out.payment_money(), std::logic_error);
}

TEST(SealedProperty, OutcomeInvariants) {
  gen::Gen g(21);
  for (int k = 0; k < 3000; ++k) {
    std::vector<PriceBid> bids;
    const std::size_t n = g.size(0, 7);
    for (std::size_t i = 0; i < n; ++i) bids.push_back({gen::bidder(i), kL, g.units(0, 20)});
    const License lic = g.coin() ? kPlain : with_reservation(g.integer(0, 20));
    const RngStream rng(static_cast<std::uint64_t>(k));
    for (bool vickrey : {false, true}) {
      const auto out = vickrey ? run_vickrey_sealed(bids, lic, rng) : run_first_price_sealed(bids, lic, rng);
      ASSERT_EQ(out.all_bids.size(), bids.size());
      for (std::size_t i = 0; i < bids.size(); ++i) {
        ASSERT_EQ(out.all_bids[i].bidder, bids[i].bidder);
        ASSERT_EQ(std::get<Money>(out.all_bids[i].amount), bids[i].amount);
      }
      ASSERT_EQ(out.sold(), out.payment.has_value());
      if (!out.sold()) {
        for (const auto& b : bids) ASSERT_LT(b.amount, lic.reservation.value_or(Money{}));
        continue;
      }
      Money top;
      for (const auto& b : bids) top = std::max(top, b.amount);
      ASSERT_EQ(out.winning_bid_money(), top);
      ASSERT_LE(out.payment_money(), out.winning_bid_money());
      ASSERT_GE(out.payment_money(), lic.reservation.value_or(Money{}));
      if (!vickrey) {
        ASSERT_EQ(out.payment_money(), top);
      }
      // Rerunning with the same stream reproduces the outcome.
      ASSERT_EQ(out, vickrey ? run_vickrey_sealed(bids, lic, rng) : run_first_price_sealed(bids, lic, rng));
    }
  }
}

TEST(Scored, WeightsMustSumToOne) {
  ScoreWeights w;
  EXPECT_NO_THROW(w.validate());
  w.fee = 0.7;
  EXPECT_THROW(w.validate(), std::invalid_argument);
}

// X: fee 100 (the top fee), rollout 1.0  -> 0.72 + 0.15          = 0.87
// Y: fee 90, rollout 0.6, rural 0.4      -> 0.648 + 0.09 + 0.04  = 0.778
TEST(Scored, HandComputedScores) {
  std::vector<ScoredBid> bids{
      {BidderId("X"), kL, {Money::from_units(100), 1.0, 0.0, 0.0}},
      {BidderId("Y"), kL, {Money::from_units(90), 0.6, 0.4, 0.0}},
  };
  const ScoreWeights w;
  EXPECT_NEAR(score_bid(bids[0].attributes, Money::from_units(100), w), 0.87, 1e-12);
  EXPECT_NEAR(score_bid(bids[1].attributes, Money::from_units(100), w), 0.778, 1e-12);
  const auto out = run_scored_sealed(bids, w, kPlain, RngStream(0));
  EXPECT_EQ(out.winner->value, "X");
  EXPECT_EQ(out.payment_money(), Money::from_units(100));
  ASSERT_TRUE(out.all_bids[0].score.has_value());
  EXPECT_NEAR(*out.all_bids[1].score, 0.778, 1e-12);
}

// A lower fee can win on the non-fee attributes: 0.576 + 0.15 + 0.10 + 0.03 = 0.856 > 0.72.
TEST(Scored, AttributesCanOutweighFee) {
  std::vector<ScoredBid> bids{
      {BidderId("X"), kL, {Money::from_units(100), 0.0, 0.0, 0.0}},
      {BidderId("Y"), kL, {Money::from_units(80), 1.0, 1.0, 1.0}},
  };
  const auto out = run_scored_sealed(bids, ScoreWeights{}, kPlain, RngStream(0));
  EXPECT_EQ(out.winner->value, "Y");
  EXPECT_EQ(out.payment_money(), Money::from_units(80));
}

namespace {

struct CascadeOracle {
  std::vector<std::pair<std::string, Money>> penalties;
  std::optional<std::string> winner;
  Money price;
};

// Walk bidders from the highest bid down; anyone whose ceiling is below
// their own bid defaults and forfeits fraction × bid.
CascadeOracle cascade_oracle(std::vector<std::pair<std::string, std::int64_t>> bids,
                             const std::map<std::string, std::int64_t>& ceilings, double fraction) {
  std::stable_sort(bids.begin(), bids.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  CascadeOracle o;
  for (const auto& [who, amount] : bids) {
    const auto it = ceilings.find(who);
    if (it == ceilings.end() || it->second >= amount) {
      o.winner = who;
      o.price = Money::from_units(amount);
      return o;
    }
    o.penalties.push_back({who, Money::from_double(amount * fraction)});
  }
  return o;
}

}  // namespace

TEST(Cascade, DefaultsWalkDownTheBidRecord) {
  const auto bids = bids_of({{"big", 200}, {"mid", 105}, {"small", 100}});
  const auto fpsb = run_first_price_sealed(bids, kPlain, RngStream(0));
  const std::map<BidderId, Money> ceilings{{BidderId("big"), Money::from_units(150)},
                                           {BidderId("mid"), Money::from_units(100)}};
  const auto out = resolve_default_cascade(fpsb, ceilings, 0.01, kPlain, RngStream(0));

  const auto oracle = cascade_oracle({{"big", 200}, {"mid", 105}, {"small", 100}},
                                     {{"big", 150}, {"mid", 100}}, 0.01);
  ASSERT_EQ(out.default_trace.size(), oracle.penalties.size());
  for (std::size_t i = 0; i < oracle.penalties.size(); ++i) {
    EXPECT_EQ(out.default_trace[i].bidder.value, oracle.penalties[i].first);
    EXPECT_EQ(out.default_trace[i].penalty, oracle.penalties[i].second);
  }
  EXPECT_EQ(out.default_trace[0].penalty, Money::parse("2.00"));
  EXPECT_EQ(out.default_trace[1].penalty, Money::parse("1.05"));
  EXPECT_EQ(out.winner->value, "small");
  EXPECT_EQ(out.payment_money(), Money::from_units(100));
  EXPECT_EQ(out.total_penalties(), Money::parse("3.05"));
}

TEST(Cascade, EveryoneDefaultingLeavesLicenseUnsold) {
  const auto bids = bids_of({{"a", 50}, {"b", 40}});
  const auto fpsb = run_first_price_sealed(bids, kPlain, RngStream(0));
  const std::map<BidderId, Money> ceilings{{BidderId("a"), Money{}}, {BidderId("b"), Money{}}};
  const auto out = resolve_default_cascade(fpsb, ceilings, 0.1, kPlain, RngStream(0));
  EXPECT_FALSE(out.sold());
  EXPECT_EQ(out.default_trace.size(), 2u);
  EXPECT_EQ(out.total_penalties(), Money::from_units(9));
}

TEST(CascadeProperty, MatchesOracle) {
  gen::Gen g(33);
  for (int k = 0; k < 2000; ++k) {
    std::vector<std::pair<std::string, std::int64_t>> raw;
    std::map<std::string, std::int64_t> raw_ceilings;
    std::map<BidderId, Money> ceilings;
    std::set<std::int64_t> used;
    const std::size_t n = g.size(1, 6);
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t amount;
      do amount = g.integer(1, 500);
      while (!used.insert(amount).second);
      raw.push_back({"b" + std::to_string(i), amount});
      if (g.coin()) {
        const auto c = g.integer(0, 500);
        raw_ceilings["b" + std::to_string(i)] = c;
        ceilings[BidderId("b" + std::to_string(i))] = Money::from_units(c);
      }
    }
    std::vector<PriceBid> bids;
    for (const auto& [id, a] : raw) bids.push_back({BidderId(id), kL, Money::from_units(a)});
    const double fraction = g.real(0.0, 0.5);
    const auto out = resolve_default_cascade(run_first_price_sealed(bids, kPlain, RngStream(0)), ceilings, fraction,
                                             kPlain, RngStream(0));
    const auto oracle = cascade_oracle(raw, raw_ceilings, fraction);
    ASSERT_EQ(out.default_trace.size(), oracle.penalties.size()) << k;
    for (std::size_t i = 0; i < oracle.penalties.size(); ++i) {
      ASSERT_EQ(out.default_trace[i].bidder.value, oracle.penalties[i].first);
      ASSERT_EQ(out.default_trace[i].penalty, oracle.penalties[i].second);
    }
    ASSERT_EQ(out.sold(), oracle.winner.has_value());
    if (oracle.winner) {
      ASSERT_EQ(out.winner->value, *oracle.winner);
      ASSERT_EQ(out.payment_money(), oracle.price);
    }
  }
}

TEST(Outcome, MechanismNames) {
  for (auto m : {Mechanism::fpsb, Mechanism::vickrey, Mechanism::scored, Mechanism::samr, Mechanism::share}) {
    EXPECT_EQ(parse_mechanism(to_string(m)), m);
  }
  EXPECT_FALSE(parse_mechanism("dutch").has_value());
  EXPECT_TRUE(is_price_mechanism(Mechanism::samr));
  EXPECT_FALSE(is_price_mechanism(Mechanism::share));
}
