#include "auctionlab/montecarlo/scenario.hpp"

#include <cmath>
#include <set>

namespace auctionlab::montecarlo {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out = "invalid scenario:";
  for (const auto& s : items) {
    out += "\n  - ";
    out += s;
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

Scenario Scenario::under(Mechanism m) const {
  Scenario s = *this;
  s.mechanism = m;
  for (std::size_t i = 0; i < s.bidders.size() && i < strategy_by_mechanism.size(); ++i) {
    if (auto it = strategy_by_mechanism[i].find(m); it != strategy_by_mechanism[i].end()) {
      s.bidders[i].strategy = it->second;
    }
  }
  return s;
}

std::vector<std::string> Scenario::violations() const {
  std::vector<std::string> out;
  if (!strategy_by_mechanism.empty() && strategy_by_mechanism.size() != bidders.size()) {
    out.emplace_back("bidders: strategy_by_mechanism must have one entry per bidder");
  }
  if (trials < 1) out.emplace_back("trials: must be >= 1");
  if (licenses.empty()) out.emplace_back("licenses: at least one license is required");
  std::set<LicenseId> license_ids;
  for (const auto& l : licenses) {
    if (l.id.value.empty()) out.emplace_back("licenses: id must not be empty");
    if (!license_ids.insert(l.id).second) out.push_back("licenses: duplicate id '" + l.id.value + "'");
  }
  if (bidders.empty()) out.emplace_back("bidders: at least one bidder is required");
  std::set<BidderId> bidder_ids;
  for (const auto& b : bidders) {
    if (!bidder_ids.insert(b.id).second) out.push_back("bidders: duplicate id '" + b.id.value + "'");
    for (auto& v : b.violations()) out.push_back("bidders: " + v);
    if (b.strategy.kind == StrategyKind::fpsb_equilibrium && bidders.size() < 2) {
      out.push_back("bidders: '" + b.id.value + "' uses fpsb_equilibrium, which needs >= 2 bidders");
    }
    if (b.strategy.kind == StrategyKind::certainty_equivalent &&
        std::holds_alternative<CommonValueSignal>(b.value_model)) {
      out.push_back("bidders: '" + b.id.value + "' certainty_equivalent needs a point or distribution value");
    }
    if (std::holds_alternative<CommonValueSignal>(b.value_model) && !common_value) {
      out.push_back("config.common_value: required by common-value bidder '" + b.id.value + "'");
    }
    if (mechanism == Mechanism::scored && !b.attributes) {
      out.push_back("bidders: '" + b.id.value + "' needs attributes for the scored mechanism");
    }
  }
  if (common_value) {
    for (auto& v : common_value->violations()) out.push_back("config.common_value: " + v);
  }

  switch (mechanism) {
    case Mechanism::samr:
      if (!samr) {
        out.emplace_back("config.samr: required for mechanism samr");
      } else {
        try {
          samr->validate();
        } catch (const std::exception& e) {
          out.push_back(std::string("config.samr: ") + e.what());
        }
      }
      break;
    case Mechanism::scored:
      if (!weights) {
        out.emplace_back("config.weights: required for mechanism scored");
      } else {
        try {
          weights->validate();
        } catch (const std::exception& e) {
          out.push_back(std::string("config.weights: ") + e.what());
        }
      }
      break;
    case Mechanism::share:
      if (!share) {
        out.emplace_back("config.share: required for mechanism share");
      } else {
        if (share->revenues.empty()) out.emplace_back("config.share.revenues: at least one period is required");
        if (!std::isfinite(share->rate) || share->rate < 0.0) out.emplace_back("config.share.rate: must be >= 0");
      }
      break;
    case Mechanism::fpsb:
    case Mechanism::vickrey:
      break;
  }
  return out;
}

}  // namespace auctionlab::montecarlo
