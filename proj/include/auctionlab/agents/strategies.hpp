#pragma once

#include <cstddef>
#include <vector>

#include "auctionlab/core/types.hpp"

namespace auctionlab::agents {

Money truthful_bid(Money value);

// (1 - shading) × value rounded to the cent; shading must lie in [0, 1).
Money shaded_bid(Money value, double shading);

// Symmetric Bayes-Nash first-price bid for values iid uniform on [0, 1]:
// ((n - 1) / n) × value. Requires n >= 2.
double equilibrium_fpsb_bid(double value, int bidders);

Money budget_constrained_bid(Money value, Money budget);

// Certainty equivalent of `dist` under exponential utility
// u(x) = 1 - exp(-a x): -(1/a) ln E[exp(-a V)], and E[V] when a == 0.
// Normal uses the closed form mean - a sd^2 / 2; uniform integrates the
// moment generating function numerically.
double certainty_equivalent(const ValueDistribution& dist, double risk_coefficient);

// certainty_equivalent as a bid, floored at zero.
Money certainty_equivalent_bid(const ValueDistribution& dist, double risk_coefficient);

enum class CommonValueMode { naive, corrected };

// Expected maximum of n iid standard normal draws, estimated once per n from
// 1e5 seeded Monte Carlo draws and cached for the life of the process.
double expected_max_standard_normal(int n);

// Selection-bias correction sd × E[max of n standard normals]; 0 when n == 1.
double common_value_correction(int bidders, double noise_sd);

// naive bids the signal; corrected subtracts the expected highest noise draw.
// The bid is floored at zero. Throws when bidders < 1 or noise_sd < 0.
Money common_value_bid(Money signal, CommonValueMode mode, int bidders, double noise_sd);

}  // namespace auctionlab::agents
