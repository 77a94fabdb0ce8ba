#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "auctionlab/core/types.hpp"
#include "auctionlab/mechanisms/outcome.hpp"
#include "auctionlab/mechanisms/samr.hpp"
#include "auctionlab/mechanisms/sealed.hpp"

namespace auctionlab::montecarlo {

// Share auction setting: escrowed government valuation plus the revenue
// stream the winner is expected to earn (also used to translate money values
// into share bids at the hurdle rate).
struct ShareSetup {
  Money v_g;
  std::vector<Money> revenues;
  double rate = 0.0;
};

// Context for axiom scoring; every field is optional.
struct MetricsContext {
  std::optional<Money> v_g;
  std::optional<Money> rollout_cost;
  std::optional<Money> upfront_fee;
};

struct Scenario {
  Mechanism mechanism = Mechanism::vickrey;
  std::vector<License> licenses;
  std::vector<BidderProfile> bidders;
  // Strategy a bidder plays under a particular mechanism, overriding
  // BidderProfile::strategy. Indexed like bidders; may be empty.
  std::vector<std::map<Mechanism, Strategy>> strategy_by_mechanism;
  std::optional<SamrConfig> samr;
  std::optional<ScoreWeights> weights;
  std::optional<ShareSetup> share;
  // Distribution of the common value seen through CommonValueSignal models.
  std::optional<ValueDistribution> common_value;
  std::uint64_t trials = 100'000;
  std::uint64_t master_seed = 42;
  MetricsContext metrics;

  // Copy with `m` as the mechanism and the matching strategy overrides
  // applied to each bidder.
  Scenario under(Mechanism m) const;

  // Every violation found, each naming the offending field.
  std::vector<std::string> violations() const;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

}  // namespace auctionlab::montecarlo
