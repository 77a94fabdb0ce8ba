#include "auctionlab/agents/cashflow.hpp"

#include <cmath>
#include <stdexcept>

namespace auctionlab::agents {

CashFlowForecast CashFlowForecast::flat(std::size_t periods, Money revenue, Money cost, double rate) {
  CashFlowForecast f;
  f.revenues.assign(periods, revenue);
  f.costs.assign(periods, cost);
  f.hurdle_rate = rate;
  f.validate();
  return f;
}

void CashFlowForecast::validate() const {
  if (revenues.empty()) throw std::invalid_argument("cash-flow forecast needs at least one period");
  if (costs.size() != revenues.size()) throw std::invalid_argument("revenue and cost streams differ in length");
  if (!std::isfinite(hurdle_rate) || hurdle_rate < 0.0) throw std::invalid_argument("hurdle rate must be >= 0");
}

double present_value(std::span<const Money> amounts, double rate) {
  double pv = 0.0;
  double discount = 1.0;
  for (const Money m : amounts) {
    discount /= 1.0 + rate;
    pv += m.to_double() * discount;
  }
  return pv;
}

Share share_backout(const CashFlowForecast& forecast) {
  forecast.validate();
  const double pv_revenue = present_value(forecast.revenues, forecast.hurdle_rate);
  const double pv_cost = present_value(forecast.costs, forecast.hurdle_rate);
  if (pv_revenue <= 0.0 || pv_cost >= pv_revenue) return Share::zero();
  return Share::clamped((pv_revenue - pv_cost) / pv_revenue);
}

}  // namespace auctionlab::agents
