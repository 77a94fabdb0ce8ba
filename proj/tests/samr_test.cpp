#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "auctionlab/core/rng.hpp"
#include "auctionlab/mechanisms/samr.hpp"
#include "gen.hpp"

using namespace auctionlab;

namespace {

const LicenseId kL("L1");

SamrConfig step(std::int64_t units) {
  SamrConfig c;
  c.increment = SamrIncrement::fixed(Money::from_units(units));
  return c;
}

std::vector<SamrAgent> single_license(std::initializer_list<std::int64_t> values) {
  std::vector<SamrAgent> out;
  std::size_t i = 0;
  for (auto v : values) out.push_back({gen::bidder(i++), {{kL, Money::from_units(v)}}});
  return out;
}

// Replays a single-license round log against the bidding rule: in each round
// exactly the agents who are not standing high and can afford the required
// price bid it, and one of them becomes the standing bidder.
void check_single_license_log(const std::vector<SamrAgent>& agents, const SamrResult& r, const SamrConfig& c,
                              Money opening) {
  std::optional<BidderId> standing;
  std::optional<Money> price;
  for (const auto& round : r.round_log) {
    const Money required = price ? c.increment.step_above(*price) : opening;
    std::vector<BidderId> expected;
    for (const auto& a : agents) {
      if (standing && *standing == a.id) continue;
      if (a.values.at(kL) >= required) expected.push_back(a.id);
    }
    ASSERT_EQ(round.bids.size(), expected.size()) << "round " << round.round;
    int accepted = 0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      ASSERT_EQ(round.bids[i].bidder, expected[i]);
      ASSERT_EQ(round.bids[i].amount, required);
      if (round.bids[i].accepted) {
        ++accepted;
        standing = round.bids[i].bidder;
        price = required;
      }
    }
    ASSERT_EQ(accepted, expected.empty() ? 0 : 1);
  }
  ASSERT_TRUE(r.round_log.back().bids.empty());
  ASSERT_EQ(r.outcomes[0].winner, standing);
}

}  // namespace

TEST(Samr, TwoBiddersIncrementFive) {
  const auto agents = single_license({100, 80});
  const std::vector<License> lic{{kL, "l", LicenseGroup::none, std::nullopt}};
  const auto cfg = step(5);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto r = run_samr(agents, lic, cfg, RngStream(s));
    ASSERT_TRUE(r.terminated);
    const auto& out = r.outcomes[0];
    EXPECT_EQ(out.winner->value, "b0");
    EXPECT_GE(out.payment_money(), Money::from_units(80));
    EXPECT_LE(out.payment_money(), Money::from_units(85));
    check_single_license_log(agents, r, cfg, Money{});
  }
}

TEST(Samr, SoleBidderPaysReservation) {
  const std::vector<SamrAgent> agents{{BidderId("sole"), {{kL, Money::from_units(20'000)}}}};
  const std::vector<License> lic{{kL, "australia", LicenseGroup::none, Money::from_units(20'000)}};
  const auto r = run_samr(agents, lic, SamrConfig{}, RngStream(0));
  EXPECT_EQ(r.outcomes[0].payment_money(), Money::from_units(20'000));
  EXPECT_EQ(r.rounds_used, 2u);
}

TEST(Samr, ValueBelowReservationLeavesLicenseUnsold) {
  const auto agents = single_license({10});
  const std::vector<License> lic{{kL, "l", LicenseGroup::none, Money::from_units(11)}};
  const auto r = run_samr(agents, lic, step(1), RngStream(0));
  EXPECT_FALSE(r.outcomes[0].sold());
  EXPECT_EQ(r.rounds_used, 1u);
}

TEST(Samr, NoAgentsClosesAfterOneRound) {
  const std::vector<License> lic{{kL, "l", LicenseGroup::none, std::nullopt}};
  const auto r = run_samr({}, lic, step(1), RngStream(0));
  EXPECT_EQ(r.rounds_used, 1u);
  EXPECT_FALSE(r.outcomes[0].sold());
}

TEST(Samr, RoundCapReportsNonTermination) {
  const auto agents = single_license({1000, 1000});
  const std::vector<License> lic{{kL, "l", LicenseGroup::none, std::nullopt}};
  auto cfg = step(1);
  cfg.max_rounds = 10;
  const auto r = run_samr(agents, lic, cfg, RngStream(0));
  EXPECT_FALSE(r.terminated);
  EXPECT_FALSE(r.outcomes[0].terminated);
  EXPECT_EQ(r.rounds_used, 10u);
}

TEST(Samr, ProportionalIncrementHasOneCentFloor) {
  const auto inc = SamrIncrement::proportional(0.1);
  EXPECT_EQ(inc.step_above(Money::from_units(100)), Money::from_units(110));
  EXPECT_EQ(inc.step_above(Money{}), Money::from_cents(1));
  EXPECT_EQ(inc.step_above(Money::from_cents(5)), Money::from_cents(6));
}

TEST(Samr, ConfigValidation) {
  SamrConfig c;
  c.increment = SamrIncrement::fixed(Money{});
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = step(1);
  c.max_rounds = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Samr, RejectsDuplicateIdsAndUnknownLicenses) {
  const std::vector<License> lic{{kL, "l", LicenseGroup::none, std::nullopt}};
  std::vector<SamrAgent> dup{{BidderId("a"), {{kL, Money::from_units(1)}}}, {BidderId("a"), {}}};
  EXPECT_THROW(run_samr(dup, lic, step(1), RngStream(0)), std::invalid_argument);
  std::vector<SamrAgent> stray{{BidderId("a"), {{LicenseId("nope"), Money::from_units(1)}}}};
  EXPECT_THROW(run_samr(stray, lic, step(1), RngStream(0)), std::invalid_argument);
  const std::vector<License> twice{lic[0], lic[0]};
  EXPECT_THROW(run_samr({}, twice, step(1), RngStream(0)), std::invalid_argument);
}

TEST(Samr, ActivityRuleDropsIdleAgents) {
  const LicenseId a("A");
  const LicenseId b("B");
  const std::vector<License> lic{{a, "a", LicenseGroup::none, std::nullopt}, {b, "b", LicenseGroup::none, Money::from_units(50)}};
  // "late" values only B but cannot afford it at first; under the activity
  // rule it is out for good after the first idle round.
  std::vector<SamrAgent> agents{{BidderId("x"), {{a, Money::from_units(10)}}},
                                {BidderId("late"), {{b, Money::from_units(40)}}}};
  auto cfg = step(1);
  cfg.activity = ActivityRule::must_act_each_round;
  const auto r = run_samr(agents, lic, cfg, RngStream(0));
  EXPECT_FALSE(r.outcomes[1].sold());
  EXPECT_EQ(r.outcomes[0].winner->value, "x");
}

TEST(SamrProperty, SingleLicensePriceNearSecondValue) {
  gen::Gen g(44);
  for (int k = 0; k < 400; ++k) {
    const std::size_t n = g.size(2, 5);
    std::vector<SamrAgent> agents;
    std::vector<std::int64_t> values;
    for (std::size_t i = 0; i < n; ++i) {
      values.push_back(g.integer(0, 300));
      agents.push_back({gen::bidder(i), {{kL, Money::from_units(values.back())}}});
    }
    const std::int64_t inc = g.integer(1, 20);
    const auto cfg = step(inc);
    const std::vector<License> lic{{kL, "l", LicenseGroup::none, std::nullopt}};
    const auto r = run_samr(agents, lic, cfg, RngStream(static_cast<std::uint64_t>(k)));
    ASSERT_TRUE(r.terminated);
    check_single_license_log(agents, r, cfg, Money{});

    auto sorted = values;
    std::sort(sorted.rbegin(), sorted.rend());
    const auto& out = r.outcomes[0];
    ASSERT_TRUE(out.sold());
    const auto w = std::stoul(out.winner->value.substr(1));
    ASSERT_LE(out.payment_money(), Money::from_units(values[w]));  // never pays above value
    const double price = out.payment_money().to_double();
    ASSERT_GT(price, static_cast<double>(sorted[1] - inc)) << k;
    ASSERT_LE(price, static_cast<double>(sorted[1] + inc)) << k;
    // Rounds bound: floor((vmax - opening) / inc) + 2.
    ASSERT_LE(r.rounds_used, static_cast<std::uint32_t>(sorted[0] / inc + 2)) << k;
  }
}

TEST(SamrProperty, MultiLicenseIndividualRationality) {
  gen::Gen g(45);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n_lic = g.size(1, 4);
    std::vector<License> lic;
    for (std::size_t l = 0; l < n_lic; ++l) {
      std::optional<Money> reserve;
      if (g.coin()) reserve = g.units(0, 50);
      lic.push_back({LicenseId("L" + std::to_string(l)), "", LicenseGroup::none, reserve});
    }
    std::vector<SamrAgent> agents(g.size(1, 5));
    for (std::size_t i = 0; i < agents.size(); ++i) {
      agents[i].id = gen::bidder(i);
      for (const auto& l : lic) {
        if (g.integer(0, 3) > 0) agents[i].values[l.id] = g.units(0, 200);
      }
    }
    const auto r = run_samr(agents, lic, step(g.integer(1, 10)), RngStream(static_cast<std::uint64_t>(k)));
    ASSERT_TRUE(r.terminated);
    ASSERT_EQ(r.outcomes.size(), n_lic);
    for (std::size_t l = 0; l < n_lic; ++l) {
      const auto& out = r.outcomes[l];
      if (!out.sold()) continue;
      const auto& winner = *std::find_if(agents.begin(), agents.end(), [&](const auto& a) { return a.id == *out.winner; });
      ASSERT_LE(out.payment_money(), winner.values.at(lic[l].id));
      ASSERT_GE(out.payment_money(), lic[l].reservation.value_or(Money{}));
      ASSERT_EQ(out.payment, out.winning_bid);
    }
  }
}

TEST(SamrProperty, DeterministicForAStream) {
  gen::Gen g(46);
  for (int k = 0; k < 50; ++k) {
    std::vector<SamrAgent> agents;
    for (std::size_t i = 0; i < 4; ++i) agents.push_back({gen::bidder(i), {{kL, g.units(0, 100)}}});
    const std::vector<License> lic{{kL, "l", LicenseGroup::none, std::nullopt}};
    const auto a = run_samr(agents, lic, step(3), RngStream(static_cast<std::uint64_t>(k)));
    const auto b = run_samr(agents, lic, step(3), RngStream(static_cast<std::uint64_t>(k)));
    ASSERT_EQ(a.outcomes, b.outcomes);
    ASSERT_EQ(a.rounds_used, b.rounds_used);
  }
}
