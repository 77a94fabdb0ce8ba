#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "auctionlab/core/types.hpp"
#include "auctionlab/mechanisms/outcome.hpp"
#include "auctionlab/mechanisms/share_auction.hpp"
#include "auctionlab/properties/anonymity.hpp"

namespace auctionlab::properties {

struct ScorecardContext {
  std::optional<Money> v_g;
  bool v_g_synthetic = false;
  std::optional<Money> rollout_cost;
  // Defaults to the payment for price mechanisms and zero for the share auction.
  std::optional<Money> upfront_fee;
  std::optional<PaymentSchedule> schedule;   // share auction revenue
  std::optional<double> pv_revenues;         // share rent in money terms
  std::optional<std::size_t> submitted_bids;
  std::optional<AnonymityResult> equivariance;
};

// Quantitative proxies for the five developing-country requirements:
// fairness/transparency, treasury revenue, build-out, post-auction network
// cost, and speed of conclusion.
struct AxiomScorecard {
  std::optional<bool> a1_equivariance;
  std::vector<std::size_t> a1_violating_permutation;
  std::optional<bool> a1_disclosure_complete;

  std::optional<double> a2_revenue_ratio;
  bool a2_v_g_synthetic = false;

  std::optional<double> a3_upfront_burden;

  // Money rent anyone can compute from the disclosed record. For the share
  // auction this is zero and a4_rent_publicly_computable is false.
  std::optional<Money> a4_visible_rent;
  bool a4_rent_publicly_computable = true;
  std::optional<double> a4_share_rent;           // winning share - paid share
  std::optional<double> a4_private_rent_estimate;  // share rent × PV(revenues)

  std::uint32_t a5_rounds = 0;

  // Names of fields left empty because context was missing.
  std::vector<std::string> absent;

  friend bool operator==(const AxiomScorecard&, const AxiomScorecard&) = default;
};

AxiomScorecard axiom_scorecard(const AuctionOutcome& outcome, const ScorecardContext& context);

nlohmann::ordered_json to_json(const AxiomScorecard& card);
AxiomScorecard scorecard_from_json(const nlohmann::ordered_json& j);

// base + theta × visible money rent. The share auction discloses no money
// rent, so its network cost stays at base. theta must lie in [0, 1].
Money third_party_rent_inflation(const AuctionOutcome& outcome, Money base_cost, double theta);

}  // namespace auctionlab::properties
