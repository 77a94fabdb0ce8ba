#include "auctionlab/properties/scorecard.hpp"

#include <cmath>
#include <stdexcept>

namespace auctionlab::properties {

namespace {

Money revenue_of(const AuctionOutcome& outcome, const ScorecardContext& ctx, bool& known) {
  known = true;
  if (!outcome.sold()) return Money{};
  if (outcome.mechanism == Mechanism::share) {
    if (!ctx.schedule) {
      known = false;
      return Money{};
    }
    return ctx.schedule->cumulative();
  }
  return outcome.payment_money();
}

double ratio(Money num, Money den) { return num.to_double() / den.to_double(); }

template <typename T>
nlohmann::ordered_json opt(const std::optional<T>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

template <typename T>
std::optional<T> read_opt(const nlohmann::ordered_json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<T>();
}

}  // namespace

AxiomScorecard axiom_scorecard(const AuctionOutcome& outcome, const ScorecardContext& ctx) {
  AxiomScorecard card;

  if (ctx.equivariance) {
    card.a1_equivariance = ctx.equivariance->pass;
    if (!ctx.equivariance->pass) card.a1_violating_permutation = ctx.equivariance->permutation;
  } else {
    card.absent.push_back("a1_equivariance");
  }
  if (ctx.submitted_bids) {
    card.a1_disclosure_complete = outcome.all_bids.size() == *ctx.submitted_bids;
  } else {
    card.absent.push_back("a1_disclosure_complete");
  }

  bool revenue_known = false;
  const Money revenue = revenue_of(outcome, ctx, revenue_known);
  card.a2_v_g_synthetic = ctx.v_g_synthetic;
  if (ctx.v_g && !ctx.v_g->is_zero() && revenue_known) {
    card.a2_revenue_ratio = ratio(revenue, *ctx.v_g);
  } else {
    card.absent.push_back("a2_revenue_ratio");
  }

  Money upfront;
  if (ctx.upfront_fee) {
    upfront = *ctx.upfront_fee;
  } else if (outcome.mechanism != Mechanism::share && outcome.sold()) {
    upfront = outcome.payment_money();
  }
  if (ctx.rollout_cost && !ctx.rollout_cost->is_zero()) {
    card.a3_upfront_burden = ratio(upfront, *ctx.rollout_cost);
  } else {
    card.absent.push_back("a3_upfront_burden");
  }

  if (outcome.mechanism == Mechanism::share) {
    card.a4_visible_rent = Money{};
    card.a4_rent_publicly_computable = false;
    if (outcome.sold()) {
      const double rent = share_difference(outcome.winning_bid_share(), outcome.payment_share());
      card.a4_share_rent = rent;
      if (ctx.pv_revenues) {
        card.a4_private_rent_estimate = rent * *ctx.pv_revenues;
      } else {
        card.absent.push_back("a4_private_rent_estimate");
      }
    } else {
      card.a4_share_rent = 0.0;
      card.a4_private_rent_estimate = 0.0;
    }
  } else {
    card.a4_visible_rent =
        outcome.sold() ? outcome.winning_bid_money() - outcome.payment_money() : Money{};
  }

  card.a5_rounds = outcome.rounds_used;
  return card;
}

nlohmann::ordered_json to_json(const AxiomScorecard& card) {
  nlohmann::ordered_json j;
  j["a1_equivariance"] = opt(card.a1_equivariance);
  j["a1_violating_permutation"] = card.a1_violating_permutation;
  j["a1_disclosure_complete"] = opt(card.a1_disclosure_complete);
  j["a2_revenue_ratio"] = opt(card.a2_revenue_ratio);
  j["a2_v_g_synthetic"] = card.a2_v_g_synthetic;
  j["a3_upfront_burden"] = opt(card.a3_upfront_burden);
  j["a4_visible_rent"] =
      card.a4_visible_rent ? nlohmann::ordered_json(card.a4_visible_rent->to_string()) : nlohmann::ordered_json(nullptr);
  j["a4_rent_publicly_computable"] = card.a4_rent_publicly_computable;
  j["a4_share_rent"] = opt(card.a4_share_rent);
  j["a4_private_rent_estimate"] = opt(card.a4_private_rent_estimate);
  j["a5_rounds"] = card.a5_rounds;
  j["absent"] = card.absent;
  return j;
}

AxiomScorecard scorecard_from_json(const nlohmann::ordered_json& j) {
  AxiomScorecard card;
  card.a1_equivariance = read_opt<bool>(j, "a1_equivariance");
  card.a1_violating_permutation = j.at("a1_violating_permutation").get<std::vector<std::size_t>>();
  card.a1_disclosure_complete = read_opt<bool>(j, "a1_disclosure_complete");
  card.a2_revenue_ratio = read_opt<double>(j, "a2_revenue_ratio");
  card.a2_v_g_synthetic = j.at("a2_v_g_synthetic").get<bool>();
  card.a3_upfront_burden = read_opt<double>(j, "a3_upfront_burden");
  if (auto rent = read_opt<std::string>(j, "a4_visible_rent")) card.a4_visible_rent = Money::parse(*rent);
  card.a4_rent_publicly_computable = j.at("a4_rent_publicly_computable").get<bool>();
  card.a4_share_rent = read_opt<double>(j, "a4_share_rent");
  card.a4_private_rent_estimate = read_opt<double>(j, "a4_private_rent_estimate");
  card.a5_rounds = j.at("a5_rounds").get<std::uint32_t>();
  card.absent = j.at("absent").get<std::vector<std::string>>();
  return card;
}

Money third_party_rent_inflation(const AuctionOutcome& outcome, Money base_cost, double theta) {
  if (!std::isfinite(theta) || theta < 0.0 || theta > 1.0) {
    throw std::invalid_argument("extraction fraction must lie in [0, 1]");
  }
  if (outcome.mechanism == Mechanism::share || !outcome.sold()) return base_cost;
  const Money rent = outcome.winning_bid_money() - outcome.payment_money();
  return base_cost + scale(rent, theta);
}

}  // namespace auctionlab::properties
