#include "auctionlab/montecarlo/trials.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "auctionlab/agents/cashflow.hpp"
#include "auctionlab/agents/strategies.hpp"
#include "auctionlab/core/rng.hpp"
#include "auctionlab/mechanisms/samr.hpp"
#include "auctionlab/mechanisms/sealed.hpp"

namespace auctionlab::montecarlo {

namespace {

struct BidderDraw {
  Money realized;
  Money bid;
};

double draw(const ValueDistribution& dist, RngStream& rng) {
  switch (dist.family) {
    case ValueDistribution::Family::point: return dist.first;
    case ValueDistribution::Family::uniform: return rng.uniform(dist.first, dist.second);
    case ValueDistribution::Family::normal: return rng.normal(dist.first, dist.second);
  }
  return dist.first;
}

Money non_negative(double x) { return Money::from_double(std::max(0.0, x)); }

BidderDraw draw_bidder(const BidderProfile& profile, std::size_t n_bidders,
                       const std::optional<double>& common_value, RngStream rng) {
  BidderDraw out;
  Money value;
  std::optional<Money> signal;
  if (const auto* p = std::get_if<PointValue>(&profile.value_model)) {
    value = p->value;
  } else if (const auto* d = std::get_if<DistributedValue>(&profile.value_model)) {
    value = non_negative(draw(d->distribution, rng));
  } else {
    const auto& cv = std::get<CommonValueSignal>(profile.value_model);
    value = non_negative(*common_value);
    signal = non_negative(*common_value + rng.normal(0.0, cv.noise_sd));
  }
  out.realized = value;

  const int n = static_cast<int>(n_bidders);
  switch (profile.strategy.kind) {
    case StrategyKind::truthful:
      out.bid = agents::truthful_bid(signal.value_or(value));
      break;
    case StrategyKind::shaded:
      out.bid = agents::shaded_bid(signal.value_or(value), profile.strategy.shading);
      break;
    case StrategyKind::fpsb_equilibrium:
      out.bid = non_negative(agents::equilibrium_fpsb_bid(signal.value_or(value).to_double(), n));
      break;
    case StrategyKind::certainty_equivalent: {
      const auto* d = std::get_if<DistributedValue>(&profile.value_model);
      const auto dist = d ? d->distribution : ValueDistribution::point(value.to_double());
      out.bid = agents::certainty_equivalent_bid(dist, profile.risk_coefficient);
      break;
    }
    case StrategyKind::common_value_naive:
    case StrategyKind::common_value_corrected: {
      const auto& cv = std::get<CommonValueSignal>(profile.value_model);
      const auto mode = profile.strategy.kind == StrategyKind::common_value_naive
                            ? agents::CommonValueMode::naive
                            : agents::CommonValueMode::corrected;
      out.bid = agents::common_value_bid(*signal, mode, n, cv.noise_sd);
      break;
    }
  }
  if (profile.budget) out.bid = agents::budget_constrained_bid(out.bid, *profile.budget);
  return out;
}

void score_license(const Scenario& scenario, LicenseResult& r) {
  const auto& out = r.outcome;
  if (!out.sold()) return;
  std::size_t w = 0;
  while (scenario.bidders[w].id != *out.winner) ++w;
  const Money best = *std::max_element(r.realized_values.begin(), r.realized_values.end());
  const Money mine = r.realized_values[w];
  r.efficient = mine >= best;
  if (r.schedule) {
    r.revenue = r.schedule->cumulative();
    r.winner_cost = -schedule_surplus_component(*r.schedule, scenario.share->rate);
    r.winner_surplus = winner_surplus(out, mine, *r.schedule, scenario.share->rate);
  } else {
    r.revenue = out.payment_money();
    r.winner_cost = r.revenue.to_double();
    r.winner_surplus = winner_surplus(out, mine);
  }
  r.cursed = r.winner_cost > mine.to_double();
}

struct InstanceStats {
  bool sold = false;
  bool efficient = false;
  bool cursed = false;
  bool terminated = true;
  double surplus = 0.0;
  double rounds = 0.0;
};

struct TrialStats {
  double revenue = 0.0;
  std::vector<InstanceStats> instances;
  std::vector<double> probe;
};

TrialStats compact(const TrialRecord& rec) {
  TrialStats s;
  s.revenue = rec.revenue.to_double();
  for (const auto& l : rec.licenses) {
    InstanceStats i;
    i.sold = l.outcome.sold();
    i.efficient = l.efficient;
    i.cursed = l.cursed;
    i.terminated = l.outcome.terminated;
    i.surplus = l.winner_surplus.value_or(0.0);
    i.rounds = l.outcome.rounds_used;
    s.instances.push_back(i);
  }
  return s;
}

double standard_error(double sum, double sum_sq, std::uint64_t n) {
  if (n < 2) return 0.0;
  const double mean = sum / static_cast<double>(n);
  const double var = std::max(0.0, (sum_sq - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1));
  return std::sqrt(var / static_cast<double>(n));
}

MetricsSummary summarize(const std::vector<TrialStats>& stats, std::size_t probe_columns) {
  MetricsSummary m;
  m.trials = stats.size();
  double rev = 0.0;
  double rev_sq = 0.0;
  double surplus = 0.0;
  double surplus_sq = 0.0;
  double rounds = 0.0;
  std::uint64_t efficient = 0;
  std::uint64_t cursed = 0;
  std::vector<double> probe_sum(probe_columns, 0.0);
  std::vector<std::uint64_t> probe_n(probe_columns, 0);
  for (const auto& t : stats) {
    rev += t.revenue;
    rev_sq += t.revenue * t.revenue;
    for (const auto& i : t.instances) {
      ++m.auctions;
      rounds += i.rounds;
      if (!i.terminated) ++m.non_terminated;
      if (!i.sold) continue;
      ++m.sold;
      efficient += i.efficient;
      cursed += i.cursed;
      surplus += i.surplus;
      surplus_sq += i.surplus * i.surplus;
    }
    for (std::size_t c = 0; c < probe_columns && c < t.probe.size(); ++c) {
      if (std::isnan(t.probe[c])) continue;
      probe_sum[c] += t.probe[c];
      ++probe_n[c];
    }
  }
  if (m.trials > 0) {
    m.mean_revenue = rev / static_cast<double>(m.trials);
    m.revenue_se = standard_error(rev, rev_sq, m.trials);
  }
  if (m.auctions > 0) {
    m.mean_rounds = rounds / static_cast<double>(m.auctions);
    m.unsold_rate = static_cast<double>(m.auctions - m.sold) / static_cast<double>(m.auctions);
  }
  if (m.sold > 0) {
    const auto sold = static_cast<double>(m.sold);
    m.efficiency_rate = static_cast<double>(efficient) / sold;
    m.curse_rate = static_cast<double>(cursed) / sold;
    m.mean_winner_surplus = surplus / sold;
    m.winner_surplus_se = standard_error(surplus, surplus_sq, m.sold);
  }
  m.probe_means.resize(probe_columns, std::nan(""));
  for (std::size_t c = 0; c < probe_columns; ++c) {
    if (probe_n[c] > 0) m.probe_means[c] = probe_sum[c] / static_cast<double>(probe_n[c]);
  }
  return m;
}

}  // namespace

TrialRecord run_trial(const Scenario& scenario, std::uint64_t seed, std::uint64_t trial) {
  const RngStream trial_rng = RngStream(seed).derive("trial").derive(trial);
  std::optional<double> common_value;
  if (scenario.common_value) {
    RngStream cv_rng = trial_rng.derive("common-value");
    common_value = draw(*scenario.common_value, cv_rng);
  }

  const std::size_t n = scenario.bidders.size();
  const std::size_t n_lic = scenario.licenses.size();
  // draws[l][i]
  std::vector<std::vector<BidderDraw>> draws(n_lic);
  for (std::size_t l = 0; l < n_lic; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      draws[l].push_back(draw_bidder(scenario.bidders[i], n, common_value,
                                     trial_rng.derive("bidder").derive(i).derive(l)));
    }
  }

  TrialRecord rec;
  rec.trial = trial;
  const RngStream mech_rng = trial_rng.derive("mechanism");

  if (scenario.mechanism == Mechanism::samr) {
    std::vector<SamrAgent> agents(n);
    for (std::size_t i = 0; i < n; ++i) {
      agents[i].id = scenario.bidders[i].id;
      for (std::size_t l = 0; l < n_lic; ++l) agents[i].values[scenario.licenses[l].id] = draws[l][i].bid;
    }
    auto result = run_samr(agents, scenario.licenses, *scenario.samr, mech_rng);
    for (std::size_t l = 0; l < n_lic; ++l) {
      LicenseResult r;
      r.outcome = std::move(result.outcomes[l]);
      for (const auto& d : draws[l]) r.realized_values.push_back(d.realized);
      rec.licenses.push_back(std::move(r));
    }
  } else {
    for (std::size_t l = 0; l < n_lic; ++l) {
      const License& lic = scenario.licenses[l];
      LicenseResult r;
      for (const auto& d : draws[l]) r.realized_values.push_back(d.realized);
      switch (scenario.mechanism) {
        case Mechanism::fpsb:
        case Mechanism::vickrey: {
          std::vector<PriceBid> bids;
          for (std::size_t i = 0; i < n; ++i) bids.push_back({scenario.bidders[i].id, lic.id, draws[l][i].bid});
          r.outcome = scenario.mechanism == Mechanism::fpsb ? run_first_price_sealed(bids, lic, mech_rng)
                                                            : run_vickrey_sealed(bids, lic, mech_rng);
          break;
        }
        case Mechanism::scored: {
          std::vector<ScoredBid> bids;
          for (std::size_t i = 0; i < n; ++i) {
            ScoredAttributes attrs = *scenario.bidders[i].attributes;
            attrs.license_fee = draws[l][i].bid;
            bids.push_back({scenario.bidders[i].id, lic.id, attrs});
          }
          r.outcome = run_scored_sealed(bids, *scenario.weights, lic, mech_rng);
          break;
        }
        case Mechanism::share: {
          const auto& setup = *scenario.share;
          const double pv = agents::present_value(setup.revenues, setup.rate);
          std::vector<ShareBid> bids;
          for (std::size_t i = 0; i < n; ++i) {
            const double s = pv > 0.0 ? draws[l][i].bid.to_double() / pv : 0.0;
            bids.push_back({scenario.bidders[i].id, lic.id, Share::clamped(s)});
          }
          auto result = run_share_auction(bids, EscrowedValuation::seal(lic.id, setup.v_g), setup.revenues, mech_rng);
          r.outcome = std::move(result.outcome);
          r.schedule = std::move(result.schedule);
          break;
        }
        case Mechanism::samr:
          break;
      }
      rec.licenses.push_back(std::move(r));
    }
  }

  for (auto& r : rec.licenses) {
    score_license(scenario, r);
    rec.revenue += r.revenue;
  }
  return rec;
}

TrialsReport run_trials(const Scenario& scenario, const RunOptions& options) {
  Scenario effective = scenario.under(scenario.mechanism);
  if (options.trials) effective.trials = *options.trials;
  if (auto v = effective.violations(); !v.empty()) throw ValidationError(std::move(v));
  const std::uint64_t seed = options.seed.value_or(effective.master_seed);
  const std::uint64_t trials = effective.trials;

  std::vector<TrialStats> stats(trials);
  TrialsReport report;
  if (options.keep_log) report.log.resize(trials);

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::uint64_t t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) {
        auto rec = run_trial(effective, seed, t);
        stats[t] = compact(rec);
        if (options.probe) stats[t].probe = options.probe(rec);
        if (options.keep_log) report.log[t] = std::move(rec);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(trials);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  report.summary = summarize(stats, options.probe ? options.probe_columns : 0);
  return report;
}

double winner_surplus(const AuctionOutcome& outcome, Money realized_value) {
  if (!outcome.sold()) throw std::logic_error("winner_surplus: outcome is unsold");
  return static_cast<double>(signed_difference(realized_value, outcome.payment_money())) / 100.0;
}

double schedule_surplus_component(const PaymentSchedule& schedule, double rate) {
  std::vector<Money> payments;
  for (const auto& e : schedule.entries) payments.push_back(e.payment);
  return -agents::present_value(payments, rate);
}

double winner_surplus(const AuctionOutcome& outcome, Money realized_value, const PaymentSchedule& schedule,
                      double rate) {
  if (!outcome.sold()) throw std::logic_error("winner_surplus: outcome is unsold");
  return realized_value.to_double() + schedule_surplus_component(schedule, rate);
}

}  // namespace auctionlab::montecarlo
