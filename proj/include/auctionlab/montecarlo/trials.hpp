#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "auctionlab/core/types.hpp"
#include "auctionlab/mechanisms/outcome.hpp"
#include "auctionlab/mechanisms/share_auction.hpp"
#include "auctionlab/montecarlo/scenario.hpp"

namespace auctionlab::montecarlo {

// One license auctioned in one trial.
struct LicenseResult {
  AuctionOutcome outcome;
  std::optional<PaymentSchedule> schedule;  // share auction only
  std::vector<Money> realized_values;       // per bidder, scenario order
  Money revenue;                            // payment, or nominal schedule total
  double winner_cost = 0.0;                 // payment, or PV of schedule payments
  std::optional<double> winner_surplus;     // absent when unsold
  bool efficient = false;
  bool cursed = false;
};

struct TrialRecord {
  std::uint64_t trial = 0;
  std::vector<LicenseResult> licenses;
  Money revenue;
};

struct MetricsSummary {
  std::uint64_t trials = 0;
  std::uint64_t auctions = 0;  // trials × licenses
  std::uint64_t sold = 0;
  double mean_revenue = 0.0;   // per trial, summed over licenses
  double revenue_se = 0.0;
  double efficiency_rate = 0.0;  // sold auctions only
  double curse_rate = 0.0;       // sold auctions only
  double mean_winner_surplus = 0.0;
  double winner_surplus_se = 0.0;
  double mean_rounds = 0.0;
  double unsold_rate = 0.0;
  std::uint64_t non_terminated = 0;
  // Means of RunOptions::probe columns over trials where the value is not NaN.
  std::vector<double> probe_means;

  friend bool operator==(const MetricsSummary&, const MetricsSummary&) = default;
};

struct RunOptions {
  std::optional<std::uint64_t> seed;    // defaults to scenario.master_seed
  std::optional<std::uint64_t> trials;  // overrides scenario.trials
  unsigned threads = 0;                 // 0 = hardware concurrency
  bool keep_log = false;
  // Extra per-trial statistics, evaluated on worker threads. Must be pure.
  std::size_t probe_columns = 0;
  std::function<std::vector<double>(const TrialRecord&)> probe;
};

struct TrialsReport {
  MetricsSummary summary;
  std::vector<TrialRecord> log;  // populated when keep_log
};

// Trial t draws from RngStream(seed).derive("trial").derive(t), so results do
// not depend on thread count or execution order.
TrialRecord run_trial(const Scenario& scenario, std::uint64_t seed, std::uint64_t trial);

// Throws ValidationError listing every violation when the scenario is invalid.
TrialsReport run_trials(const Scenario& scenario, const RunOptions& options = {});

// Price mechanisms: realized_value - payment. Throws std::logic_error on an
// unsold outcome.
double winner_surplus(const AuctionOutcome& outcome, Money realized_value);
// Share auction: realized_value - PV(schedule payments).
double winner_surplus(const AuctionOutcome& outcome, Money realized_value,
                      const PaymentSchedule& schedule, double rate);
// The share auction's payment component alone: -PV(schedule payments).
double schedule_surplus_component(const PaymentSchedule& schedule, double rate);

}  // namespace auctionlab::montecarlo
