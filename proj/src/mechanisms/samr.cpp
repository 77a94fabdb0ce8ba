#include "auctionlab/mechanisms/samr.hpp"

#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>

#include "auctionlab/core/ranking.hpp"

namespace auctionlab {

namespace {

struct Standing {
  std::size_t agent;
  Money amount;
};

}  // namespace

Money SamrIncrement::step_above(Money standing) const {
  if (kind == Kind::absolute) return standing + absolute;
  const Money step = std::max(scale(standing, fraction), Money::from_cents(1));
  return standing + step;
}

void SamrConfig::validate() const {
  if (increment.kind == SamrIncrement::Kind::absolute && increment.absolute.is_zero()) {
    throw std::invalid_argument("SAMR increment must be > 0");
  }
  if (increment.kind == SamrIncrement::Kind::fraction &&
      !(std::isfinite(increment.fraction) && increment.fraction > 0.0)) {
    throw std::invalid_argument("SAMR fractional increment must be > 0");
  }
  if (max_rounds == 0) throw std::invalid_argument("SAMR max_rounds must be >= 1");
}

SamrResult run_samr(std::span<const SamrAgent> agents, std::span<const License> licenses,
                    const SamrConfig& config, const RngStream& rng) {
  config.validate();
  {
    std::set<BidderId> bidder_ids;
    for (const auto& a : agents) {
      if (!bidder_ids.insert(a.id).second) throw std::invalid_argument("duplicate agent id '" + a.id.value + "'");
    }
    std::set<LicenseId> ids;
    for (const auto& l : licenses) {
      if (!ids.insert(l.id).second) throw std::invalid_argument("duplicate license id '" + l.id.value + "'");
    }
    for (const auto& a : agents) {
      for (const auto& [lic, value] : a.values) {
        if (!ids.count(lic)) {
          throw std::invalid_argument("agent '" + a.id.value + "' values unknown license '" + lic.value + "'");
        }
      }
    }
  }

  const std::size_t n_lic = licenses.size();
  std::vector<std::optional<Standing>> standing(n_lic);
  std::vector<bool> eligible(agents.size(), true);
  std::vector<bool> ties(n_lic, false);
  std::vector<std::vector<DisclosedBid>> history(n_lic);

  auto opening = [&](std::size_t l) {
    return std::max(licenses[l].reservation.value_or(Money{}), config.opening_bid);
  };
  auto required = [&](std::size_t l) {
    return standing[l] ? config.increment.step_above(standing[l]->amount) : opening(l);
  };

  SamrResult result;
  result.terminated = false;
  for (std::uint32_t round = 1; round <= config.max_rounds; ++round) {
    SamrRound log{round, {}};
    // Per license, (index into log.bids, agent index) submitted this round.
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> submitted(n_lic);

    for (std::size_t a = 0; a < agents.size(); ++a) {
      if (!eligible[a]) continue;
      std::optional<std::size_t> pick;
      std::int64_t best_surplus = 0;
      Money pick_price;
      bool holds_any = false;
      for (std::size_t l = 0; l < n_lic; ++l) {
        if (standing[l] && standing[l]->agent == a) {
          holds_any = true;
          continue;
        }
        const auto it = agents[a].values.find(licenses[l].id);
        if (it == agents[a].values.end()) continue;
        const Money price = required(l);
        const std::int64_t surplus = signed_difference(it->second, price);
        if (surplus < 0) continue;
        if (!pick || surplus > best_surplus) {
          pick = l;
          best_surplus = surplus;
          pick_price = price;
        }
      }
      if (pick) {
        submitted[*pick].push_back({log.bids.size(), a});
        log.bids.push_back({agents[a].id, licenses[*pick].id, pick_price, false});
      } else if (config.activity == ActivityRule::must_act_each_round && !holds_any) {
        eligible[a] = false;
      }
    }

    if (log.bids.empty()) {
      result.rounds_used = round;
      result.terminated = true;
      result.round_log.push_back(std::move(log));
      break;
    }

    for (std::size_t l = 0; l < n_lic; ++l) {
      const auto& group = submitted[l];
      if (group.empty()) continue;
      const std::size_t pick =
          break_tie_index(group.size(), tie_stream(rng, licenses[l].id).derive(round));
      if (group.size() > 1) ties[l] = true;
      const auto [log_index, agent_index] = group[pick];
      log.bids[log_index].accepted = true;
      for (const auto& [idx, unused] : group) {
        history[l].push_back({log.bids[idx].bidder, log.bids[idx].amount, round, std::nullopt});
      }
      standing[l] = Standing{agent_index, log.bids[log_index].amount};
    }
    result.round_log.push_back(std::move(log));
    if (round == config.max_rounds) result.rounds_used = round;
  }

  result.outcomes.reserve(n_lic);
  for (std::size_t l = 0; l < n_lic; ++l) {
    AuctionOutcome out;
    out.mechanism = Mechanism::samr;
    out.license = licenses[l].id;
    out.all_bids = std::move(history[l]);
    out.rounds_used = result.rounds_used;
    out.tie_broken = ties[l];
    out.terminated = result.terminated;
    if (standing[l]) {
      out.winner = agents[standing[l]->agent].id;
      out.winning_bid = standing[l]->amount;
      out.payment = standing[l]->amount;
    }
    result.outcomes.push_back(std::move(out));
  }
  return result;
}

}  // namespace auctionlab
