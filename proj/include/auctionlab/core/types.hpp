#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "auctionlab/core/money.hpp"
#include "auctionlab/core/share.hpp"

namespace auctionlab {

// Opaque string identifier, distinct per Tag.
template <typename Tag>
struct Id {
  std::string value;

  Id() = default;
  explicit Id(std::string v) : value(std::move(v)) {}
  explicit Id(const char* v) : value(v) {}

  friend bool operator==(const Id&, const Id&) = default;
  friend auto operator<=>(const Id&, const Id&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Id& id) { return os << id.value; }
};

using BidderId = Id<struct BidderTag>;
using LicenseId = Id<struct LicenseTag>;

struct PriceBid {
  BidderId bidder;
  LicenseId license;
  Money amount;
};

struct ShareBid {
  BidderId bidder;
  LicenseId license;
  Share share;
};

enum class LicenseGroup { A, B, C, none };

std::string_view to_string(LicenseGroup g);
LicenseGroup parse_license_group(std::string_view text);

struct License {
  LicenseId id;
  std::string label;
  LicenseGroup group = LicenseGroup::none;
  std::optional<Money> reservation;
};

// Non-fee components of a scored sealed bid, each normalised to [0, 1].
struct ScoredAttributes {
  Money license_fee;
  double rollout_speed = 0.0;
  double rural_coverage = 0.0;
  double indigenous_content = 0.0;

  std::vector<std::string> violations() const;
};

struct ValueDistribution {
  enum class Family { point, uniform, normal };

  Family family = Family::point;
  // point: (value, unused); uniform: (lo, hi); normal: (mean, sd).
  double first = 0.0;
  double second = 0.0;

  static ValueDistribution point(double value) { return {Family::point, value, 0.0}; }
  static ValueDistribution uniform(double lo, double hi) { return {Family::uniform, lo, hi}; }
  static ValueDistribution normal(double mean, double sd) { return {Family::normal, mean, sd}; }

  double mean() const;
  bool degenerate() const;
  std::vector<std::string> violations() const;
};

std::string_view to_string(ValueDistribution::Family f);

struct PointValue {
  Money value;
};
struct DistributedValue {
  ValueDistribution distribution;
};
// Bidder observes common value + N(0, noise_sd^2).
struct CommonValueSignal {
  double noise_sd = 0.0;
};
using ValueModel = std::variant<PointValue, DistributedValue, CommonValueSignal>;

enum class StrategyKind {
  truthful,
  shaded,
  fpsb_equilibrium,
  certainty_equivalent,
  common_value_naive,
  common_value_corrected,
};

std::string_view to_string(StrategyKind k);
std::optional<StrategyKind> parse_strategy_kind(std::string_view text);

struct Strategy {
  StrategyKind kind = StrategyKind::truthful;
  // Only read by StrategyKind::shaded; fraction in [0, 1).
  double shading = 0.0;
};

struct BidderProfile {
  BidderId id;
  ValueModel value_model = PointValue{};
  std::optional<Money> budget;
  // Constant absolute risk aversion coefficient; 0 is risk-neutral.
  double risk_coefficient = 0.0;
  Strategy strategy;
  std::optional<ScoredAttributes> attributes;

  std::vector<std::string> violations() const;
};

}  // namespace auctionlab

template <typename Tag>
struct std::hash<auctionlab::Id<Tag>> {
  std::size_t operator()(const auctionlab::Id<Tag>& id) const noexcept {
    return std::hash<std::string>{}(id.value);
  }
};
