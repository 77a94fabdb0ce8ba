#include "auctionlab/core/types.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace auctionlab {

namespace {

constexpr std::array<std::pair<StrategyKind, std::string_view>, 6> kStrategyNames{{
    {StrategyKind::truthful, "truthful"},
    {StrategyKind::shaded, "shaded"},
    {StrategyKind::fpsb_equilibrium, "fpsb_equilibrium"},
    {StrategyKind::certainty_equivalent, "certainty_equivalent"},
    {StrategyKind::common_value_naive, "common_value_naive"},
    {StrategyKind::common_value_corrected, "common_value_corrected"},
}};

bool unit_interval(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

}  // namespace

std::string_view to_string(LicenseGroup g) {
  switch (g) {
    case LicenseGroup::A: return "A";
    case LicenseGroup::B: return "B";
    case LicenseGroup::C: return "C";
    case LicenseGroup::none: return "none";
  }
  return "none";
}

LicenseGroup parse_license_group(std::string_view text) {
  if (text == "A") return LicenseGroup::A;
  if (text == "B") return LicenseGroup::B;
  if (text == "C") return LicenseGroup::C;
  if (text == "none" || text.empty()) return LicenseGroup::none;
  throw std::invalid_argument("unknown license group: " + std::string(text));
}

std::vector<std::string> ScoredAttributes::violations() const {
  std::vector<std::string> out;
  if (!unit_interval(rollout_speed)) out.emplace_back("rollout_speed must lie in [0, 1]");
  if (!unit_interval(rural_coverage)) out.emplace_back("rural_coverage must lie in [0, 1]");
  if (!unit_interval(indigenous_content)) out.emplace_back("indigenous_content must lie in [0, 1]");
  return out;
}

double ValueDistribution::mean() const {
  switch (family) {
    case Family::point: return first;
    case Family::uniform: return 0.5 * (first + second);
    case Family::normal: return first;
  }
  return first;
}

bool ValueDistribution::degenerate() const {
  switch (family) {
    case Family::point: return true;
    case Family::uniform: return first == second;
    case Family::normal: return second == 0.0;
  }
  return true;
}

std::vector<std::string> ValueDistribution::violations() const {
  std::vector<std::string> out;
  if (!std::isfinite(first) || !std::isfinite(second)) {
    out.emplace_back("distribution parameters must be finite");
    return out;
  }
  if (family == Family::uniform && first > second) out.emplace_back("uniform requires lo <= hi");
  if (family == Family::normal && second < 0.0) out.emplace_back("normal requires sd >= 0");
  return out;
}

std::string_view to_string(ValueDistribution::Family f) {
  switch (f) {
    case ValueDistribution::Family::point: return "point";
    case ValueDistribution::Family::uniform: return "uniform";
    case ValueDistribution::Family::normal: return "normal";
  }
  return "point";
}

std::string_view to_string(StrategyKind k) {
  for (const auto& [kind, name] : kStrategyNames) {
    if (kind == k) return name;
  }
  return "truthful";
}

std::optional<StrategyKind> parse_strategy_kind(std::string_view text) {
  for (const auto& [kind, name] : kStrategyNames) {
    if (name == text) return kind;
  }
  return std::nullopt;
}

std::vector<std::string> BidderProfile::violations() const {
  std::vector<std::string> out;
  const std::string who = "bidder '" + id.value + "': ";
  if (id.value.empty()) out.emplace_back("bidder id must not be empty");
  if (!std::isfinite(risk_coefficient) || risk_coefficient < 0.0) {
    out.push_back(who + "risk_coefficient must be >= 0");
  }
  if (const auto* d = std::get_if<DistributedValue>(&value_model)) {
    for (auto& v : d->distribution.violations()) out.push_back(who + v);
  }
  if (const auto* c = std::get_if<CommonValueSignal>(&value_model)) {
    if (!std::isfinite(c->noise_sd) || c->noise_sd < 0.0) out.push_back(who + "noise_sd must be >= 0");
  }
  if (strategy.kind == StrategyKind::shaded &&
      !(std::isfinite(strategy.shading) && strategy.shading >= 0.0 && strategy.shading < 1.0)) {
    out.push_back(who + "shading must lie in [0, 1)");
  }
  const bool common = std::holds_alternative<CommonValueSignal>(value_model);
  const bool cv_strategy = strategy.kind == StrategyKind::common_value_naive ||
                           strategy.kind == StrategyKind::common_value_corrected;
  if (cv_strategy != common) {
    out.push_back(who + "common-value strategies require a common-value signal model and vice versa");
  }
  if (attributes) {
    for (auto& v : attributes->violations()) out.push_back(who + v);
  }
  return out;
}

}  // namespace auctionlab
