#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "auctionlab/agents/cashflow.hpp"
#include "auctionlab/agents/strategies.hpp"
#include "gen.hpp"

using namespace auctionlab;
using namespace auctionlab::agents;

TEST(Strategies, TruthfulAndShaded) {
  EXPECT_EQ(truthful_bid(Money::from_units(70)), Money::from_units(70));
  EXPECT_EQ(shaded_bid(Money::from_units(100), 0.2), Money::from_units(80));
  EXPECT_EQ(shaded_bid(Money::from_units(100), 0.0), Money::from_units(100));
  EXPECT_THROW(shaded_bid(Money::from_units(100), 1.0), std::invalid_argument);
  EXPECT_THROW(shaded_bid(Money::from_units(100), -0.1), std::invalid_argument);
}

TEST(Strategies, BudgetCapsTheBid) {
  EXPECT_EQ(budget_constrained_bid(Money::from_units(100), Money::from_units(60)), Money::from_units(60));
  EXPECT_EQ(budget_constrained_bid(Money::from_units(50), Money::from_units(60)), Money::from_units(50));
}

TEST(Strategies, EquilibriumFirstPriceBid) {
  EXPECT_DOUBLE_EQ(equilibrium_fpsb_bid(0.6, 2), 0.3);
  EXPECT_DOUBLE_EQ(equilibrium_fpsb_bid(1.0, 5), 0.8);
  EXPECT_THROW(equilibrium_fpsb_bid(0.5, 1), std::invalid_argument);
}

// Best response against n - 1 opponents who play b(v) = v (n - 1) / n with
// uniform[0, 1] values: win probability is (b n / (n - 1))^(n - 1).
TEST(Strategies, EquilibriumBidIsABestResponse) {
  for (int n : {2, 3, 5}) {
    for (double v : {0.2, 0.5, 0.9}) {
      double best_bid = 0.0;
      double best_u = -1.0;
      for (int i = 0; i <= 100'000; ++i) {
        const double b = v * i / 100'000.0;
        const double p = std::pow(std::min(1.0, b * n / (n - 1)), n - 1);
        const double u = (v - b) * p;
        if (u > best_u) {
          best_u = u;
          best_bid = b;
        }
      }
      EXPECT_NEAR(equilibrium_fpsb_bid(v, n), best_bid, 1e-4) << "n=" << n << " v=" << v;
    }
  }
}

TEST(Strategies, CertaintyEquivalentNormalMatchesMonteCarlo) {
  const auto dist = ValueDistribution::normal(10.0, 2.0);  // variance 4
  const double a = 0.5;
  std::mt19937_64 eng(2024);
  std::normal_distribution<double> z(10.0, 2.0);
  double acc = 0.0;
  const int draws = 1'000'000;
  for (int i = 0; i < draws; ++i) acc += std::exp(-a * z(eng));
  const double oracle = -std::log(acc / draws) / a;
  EXPECT_NEAR(oracle, 9.0, 0.02);
  EXPECT_NEAR(certainty_equivalent(dist, a), oracle, 0.02);
  EXPECT_EQ(certainty_equivalent_bid(dist, a), Money::from_units(9));
}

TEST(Strategies, CertaintyEquivalentUniformMatchesClosedForm) {
  // CE of uniform[lo, hi] under CARA a: -(1/a) ln((e^{-a lo} - e^{-a hi}) / (a (hi - lo))).
  for (double a : {0.05, 0.3, 1.0, 2.0}) {
    const double lo = 5.0;
    const double hi = 15.0;
    const double closed = -std::log((std::exp(-a * lo) - std::exp(-a * hi)) / (a * (hi - lo))) / a;
    EXPECT_NEAR(certainty_equivalent(ValueDistribution::uniform(lo, hi), a), closed, 1e-9) << a;
  }
  // Large offsets do not overflow.
  EXPECT_NEAR(certainty_equivalent(ValueDistribution::uniform(1e6, 1e6 + 10), 2.0),
              1e6 + (-std::log((1 - std::exp(-20.0)) / 20.0) / 2.0), 1e-6);
}

TEST(Strategies, CertaintyEquivalentIsBelowMeanAndDecreasing) {
  for (const auto& dist : {ValueDistribution::normal(10, 2), ValueDistribution::uniform(0, 20),
                           ValueDistribution::normal(100, 30)}) {
    double previous = dist.mean();
    EXPECT_DOUBLE_EQ(certainty_equivalent(dist, 0.0), dist.mean());
    for (int i = 1; i <= 20; ++i) {
      const double a = 0.1 * i;
      const double ce = certainty_equivalent(dist, a);
      EXPECT_LT(ce, dist.mean());
      EXPECT_LT(ce, previous);
      previous = ce;
    }
  }
  EXPECT_DOUBLE_EQ(certainty_equivalent(ValueDistribution::point(7), 1.5), 7.0);
}

TEST(Strategies, ExpectedMaxOfStandardNormals) {
  // Quadrature of E[max] = ∫ x n φ(x) Φ(x)^(n-1) dx.
  auto quad = [](int n) {
    const double h = 1e-4;
    double acc = 0.0;
    for (double x = -10.0; x <= 10.0; x += h) {
      const double phi = std::exp(-0.5 * x * x) / std::sqrt(2 * M_PI);
      const double Phi = 0.5 * std::erfc(-x / std::sqrt(2.0));
      acc += x * n * phi * std::pow(Phi, n - 1) * h;
    }
    return acc;
  };
  EXPECT_NEAR(quad(5), 1.16296, 1e-4);
  for (int n : {2, 3, 5, 10}) EXPECT_NEAR(expected_max_standard_normal(n), quad(n), 0.01) << n;
  EXPECT_DOUBLE_EQ(expected_max_standard_normal(1), 0.0);
}

TEST(Strategies, CommonValueBids) {
  EXPECT_EQ(common_value_bid(Money::from_units(110), CommonValueMode::naive, 5, 10), Money::from_units(110));
  const auto corrected = common_value_bid(Money::from_units(110), CommonValueMode::corrected, 5, 10);
  EXPECT_NEAR(corrected.to_double(), 110 - 10 * expected_max_standard_normal(5), 0.01);
  EXPECT_EQ(common_value_bid(Money::from_units(1), CommonValueMode::corrected, 5, 10), Money{});
  EXPECT_NEAR(common_value_correction(5, 10), 10 * expected_max_standard_normal(5), 1e-12);
}

TEST(Cashflow, PresentValueStartsAtPeriodOne) {
  const std::vector<Money> xs{Money::from_units(110), Money::from_units(121)};
  EXPECT_NEAR(present_value(xs, 0.10), 200.0, 1e-9);
  EXPECT_NEAR(present_value(xs, 0.0), 231.0, 1e-12);
}

// Spreadsheet-style oracle: NPV(r, revenue) and NPV(r, cost) summed row by row.
TEST(Cashflow, ShareBackoutThirtyYears) {
  const auto f = CashFlowForecast::flat(30, Money::from_units(100), Money::from_units(60), 0.10);
  double pv_r = 0.0;
  double pv_c = 0.0;
  double discount = 1.0;
  for (int t = 1; t <= 30; ++t) {
    discount /= 1.10;
    pv_r += 100.0 * discount;
    pv_c += 60.0 * discount;
  }
  const double oracle = (pv_r - pv_c) / pv_r;
  EXPECT_NEAR(oracle, 0.4, 1e-12);
  const Share s = share_backout(f);
  EXPECT_EQ(s.to_string(), "0.400000");
  EXPECT_EQ(s.micros(), std::llround(oracle * Share::kScale));
}

TEST(Cashflow, BackoutEdgeCases) {
  EXPECT_EQ(share_backout(CashFlowForecast::flat(10, Money{}, Money{}, 0.05)), Share::zero());
  EXPECT_EQ(share_backout(CashFlowForecast::flat(10, Money::from_units(50), Money::from_units(80), 0.05)),
            Share::zero());
  EXPECT_EQ(share_backout(CashFlowForecast::flat(10, Money::from_units(50), Money{}, 0.05)), Share::one());
  EXPECT_THROW(CashFlowForecast::flat(10, Money::from_units(1), Money{}, -0.5).validate(), std::invalid_argument);
}

TEST(CashflowProperty, BackoutMatchesOracleOnRandomStreams) {
  gen::Gen g(66);
  for (int k = 0; k < 2000; ++k) {
    CashFlowForecast f;
    const std::size_t n = g.size(1, 40);
    for (std::size_t i = 0; i < n; ++i) {
      f.revenues.push_back(g.money(100'000));
      f.costs.push_back(g.money(100'000));
    }
    f.hurdle_rate = g.real(0.0, 0.3);
    double pv_r = 0.0;
    double pv_c = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const double d = std::pow(1.0 + f.hurdle_rate, -static_cast<double>(t + 1));
      pv_r += f.revenues[t].to_double() * d;
      pv_c += f.costs[t].to_double() * d;
    }
    const double oracle = pv_r > 0 ? std::clamp((pv_r - pv_c) / pv_r, 0.0, 1.0) : 0.0;
    ASSERT_LE(std::abs(share_backout(f).to_double() - oracle), 0.5e-6 + 1e-9) << k;
  }
}
