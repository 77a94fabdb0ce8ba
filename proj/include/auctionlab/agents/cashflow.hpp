#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "auctionlab/core/types.hpp"

namespace auctionlab::agents {

// Per-period revenue and network cost forecast over the project life.
struct CashFlowForecast {
  std::vector<Money> revenues;
  std::vector<Money> costs;
  double hurdle_rate = 0.0;

  static CashFlowForecast flat(std::size_t periods, Money revenue, Money cost, double rate);

  std::size_t periods() const noexcept { return revenues.size(); }
  // Throws std::invalid_argument on empty or mismatched streams or rate < 0.
  void validate() const;
};

// Σ_t amount_t / (1 + rate)^t with t starting at 1.
double present_value(std::span<const Money> amounts, double rate);

// Largest revenue share the bidder can give up every period of the project
// life and still earn the hurdle rate: (PV(revenue) - PV(cost)) / PV(revenue),
// clamped to [0, 1]. Returns zero (no bid) when PV(revenue) is zero or costs
// absorb all revenue.
Share share_backout(const CashFlowForecast& forecast);

}  // namespace auctionlab::agents
