#include "auctionlab/cli/commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>

#include "auctionlab/agents/cashflow.hpp"
#include "auctionlab/cli/fixtures.hpp"
#include "auctionlab/cli/scenario_io.hpp"
#include "auctionlab/core/rng.hpp"
#include "auctionlab/mechanisms/share_auction.hpp"
#include "auctionlab/montecarlo/trials.hpp"
#include "auctionlab/properties/anonymity.hpp"
#include "auctionlab/properties/dominance.hpp"
#include "auctionlab/properties/equivalence.hpp"
#include "auctionlab/properties/scorecard.hpp"

namespace auctionlab::cli {

namespace {

using montecarlo::Scenario;

// Raised for bad command-line input; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kSummaryColumns = {
    "mechanism",         "trials",           "auctions",        "sold",
    "mean_revenue",      "revenue_se",       "efficiency_rate", "curse_rate",
    "unsold_rate",       "mean_rounds",      "mean_winner_surplus", "winner_surplus_se",
    "non_terminated",    "a1_disclosure_complete", "a2_revenue_ratio", "a2_v_g_synthetic",
    "a3_upfront_burden", "a4_visible_rent",  "a4_rent_publicly_computable", "a5_rounds"};

enum ProbeColumn { kDisclosure, kRevenueRatio, kUpfrontBurden, kVisibleRent, kProbeColumns };

std::optional<Money> scenario_v_g(const Scenario& s) {
  if (s.metrics.v_g) return s.metrics.v_g;
  if (s.share) return s.share->v_g;
  return std::nullopt;
}

std::vector<double> probe_trial(const Scenario& s, const montecarlo::TrialRecord& rec) {
  std::vector<double> sum(kProbeColumns, 0.0);
  std::vector<int> n(kProbeColumns, 0);
  auto add = [&](int col, std::optional<double> x) {
    if (!x) return;
    sum[col] += *x;
    ++n[col];
  };
  for (const auto& l : rec.licenses) {
    properties::ScorecardContext ctx;
    ctx.v_g = scenario_v_g(s);
    ctx.v_g_synthetic = true;
    ctx.rollout_cost = s.metrics.rollout_cost;
    ctx.upfront_fee = s.metrics.upfront_fee;
    ctx.schedule = l.schedule;
    if (s.share) ctx.pv_revenues = agents::present_value(s.share->revenues, s.share->rate);
    // Sealed mechanisms take exactly one bid per bidder.
    if (s.mechanism != Mechanism::samr) ctx.submitted_bids = s.bidders.size();
    const auto card = properties::axiom_scorecard(l.outcome, ctx);
    if (card.a1_disclosure_complete) add(kDisclosure, *card.a1_disclosure_complete ? 1.0 : 0.0);
    add(kRevenueRatio, card.a2_revenue_ratio);
    add(kUpfrontBurden, card.a3_upfront_burden);
    if (card.a4_visible_rent) add(kVisibleRent, card.a4_visible_rent->to_double());
  }
  std::vector<double> out(kProbeColumns, std::nan(""));
  for (int c = 0; c < kProbeColumns; ++c) {
    if (n[c] > 0) out[c] = sum[c] / n[c];
  }
  return out;
}

std::vector<Cell> summary_row(const Scenario& s, std::uint64_t seed, std::optional<std::uint64_t> trials,
                              unsigned threads) {
  montecarlo::RunOptions opts;
  opts.seed = seed;
  opts.trials = trials;
  opts.threads = threads;
  opts.probe_columns = kProbeColumns;
  opts.probe = [&s](const montecarlo::TrialRecord& rec) { return probe_trial(s, rec); };
  const auto m = montecarlo::run_trials(s, opts).summary;
  const auto& p = m.probe_means;
  return {std::string(to_string(s.mechanism)),
          static_cast<std::int64_t>(m.trials),
          static_cast<std::int64_t>(m.auctions),
          static_cast<std::int64_t>(m.sold),
          m.mean_revenue,
          m.revenue_se,
          m.sold ? cell(m.efficiency_rate) : Cell(),
          m.sold ? cell(m.curse_rate) : Cell(),
          m.unsold_rate,
          m.mean_rounds,
          m.sold ? cell(m.mean_winner_surplus) : Cell(),
          m.sold ? cell(m.winner_surplus_se) : Cell(),
          static_cast<std::int64_t>(m.non_terminated),
          cell(p[kDisclosure]),
          cell(p[kRevenueRatio]),
          scenario_v_g(s).has_value(),
          cell(p[kUpfrontBurden]),
          cell(p[kVisibleRent]),
          s.mechanism != Mechanism::share,
          m.mean_rounds};
}

std::string money_list(std::span<const Money> xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + xs[i].to_string();
  return out + "]";
}

std::string share_list(std::span<const Share> xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + xs[i].to_string();
  return out + "]";
}

struct SuiteRows {
  Report& report;
  bool all_pass = true;

  void add(const std::string& suite, const std::string& check, bool pass, const std::string& detail) {
    report.add_row({suite, check, pass, detail});
    all_pass = all_pass && pass;
  }
};

void dominance_suite(SuiteRows& rows) {
  const auto grid = properties::DominanceGrid::desk_default();
  const auto vickrey = properties::check_weak_dominance(Mechanism::vickrey, grid);
  rows.add("dominance", "vickrey truthful weakly dominant", vickrey.verdict == properties::Verdict::weakly_dominant,
           std::string(to_string(vickrey.verdict)) + ", " + std::to_string(vickrey.comparisons) + " comparisons");

  const auto fpsb = properties::check_weak_dominance(Mechanism::fpsb, grid);
  bool fpsb_ok = fpsb.verdict == properties::Verdict::not_dominant && fpsb.counterexample.has_value();
  std::string detail = std::string(to_string(fpsb.verdict));
  if (fpsb.counterexample) {
    const auto& c = *fpsb.counterexample;
    const double replayed = properties::replay(Mechanism::fpsb, c);
    fpsb_ok = fpsb_ok && replayed > 0.0 && replayed == c.gain;
    detail += ": value " + c.value.to_string() + ", bid " + c.deviation.to_string() + " vs opponents " +
              money_list(c.opponents) + " gains " + format_double(c.gain) + " (replayed " +
              format_double(replayed) + ")";
  }
  rows.add("dominance", "fpsb truthful not dominant", fpsb_ok, detail);

  auto solo = grid;
  solo.min_opponents = 0;
  solo.max_opponents = 0;
  const auto single = properties::check_weak_dominance(Mechanism::vickrey, solo);
  rows.add("dominance", "single bidder vickrey weakly dominant",
           single.verdict == properties::Verdict::weakly_dominant, std::string(to_string(single.verdict)));
}

void equivalence_suite(SuiteRows& rows, std::uint64_t seed, std::uint64_t trials, unsigned threads) {
  for (int n : {2, 3, 5}) {
    const auto r = properties::revenue_equivalence_test(n, trials, seed, 0.0, threads);
    rows.add("equivalence", "n=" + std::to_string(n) + " fpsb and vickrey revenue agree", r.pass,
             "fpsb " + format_double(r.mean_fpsb) + ", vickrey " + format_double(r.mean_vickrey) + ", expected " +
                 format_double(r.expected) + ", pooled se " + format_double(r.pooled_se));
  }
  const auto shaded = properties::revenue_equivalence_test(2, trials, seed, 0.2, threads);
  rows.add("equivalence", "n=2 shaded vickrey (0.2) is detected", !shaded.pass,
           "vickrey " + format_double(shaded.mean_vickrey) + " vs expected " + format_double(shaded.expected));
}

void anonymity_suite(SuiteRows& rows, std::uint64_t seed) {
  for (auto m : {Mechanism::fpsb, Mechanism::vickrey, Mechanism::scored, Mechanism::samr, Mechanism::share}) {
    const auto r = properties::anonymity_battery(m, 100, seed);
    rows.add("anonymity", std::string(to_string(m)) + " equivariant on random tie-free profiles",
             r.failures == 0,
             std::to_string(r.profiles - r.failures) + "/" + std::to_string(r.profiles) + " passed" +
                 (r.first_failure.empty() ? "" : "; " + r.first_failure));
  }
}

void share_suite(SuiteRows& rows, std::uint64_t seed) {
  const auto setting = properties::ShareSetting::standard();
  const auto over = properties::check_no_overbid_incentive_share(properties::ShareOverbidGrid::desk_default(), setting);
  std::string detail = std::to_string(over.comparisons) + " comparisons";
  if (over.counterexample) {
    const auto& c = *over.counterexample;
    detail += "; true share " + c.true_share.to_string() + ", overbid " + c.overbid.to_string() + " vs " +
              share_list(c.opponents) + " gains " + format_double(c.gain);
  }
  rows.add("share", "no incentive to overbid", over.pass, detail);

  // Underbidding is reported, never judged: the pass cell stays empty.
  const auto under = properties::describe_underbidding_share(properties::ShareOverbidGrid::desk_default(), setting);
  std::string under_detail = std::to_string(under.profitable) + " of " + std::to_string(under.comparisons) +
                             " underbids profitable";
  if (under.counterexample) {
    const auto& c = *under.counterexample;
    under_detail += "; largest: true share " + c.true_share.to_string() + ", bid " + c.overbid.to_string() + " vs " +
                    share_list(c.opponents) + " gains " + format_double(c.gain);
  }
  rows.report.add_row({std::string("share"), std::string("underbidding (descriptive)"), std::monostate{}, under_detail});

  // Random profiles: winner holds the top share, pays the second, and the
  // schedule total equals min(V_g, paid share × total revenue).
  const RngStream root = RngStream(seed).derive("share-suite");
  std::size_t winner_failures = 0;
  std::size_t schedule_failures = 0;
  const std::size_t profiles = 1000;
  for (std::size_t k = 0; k < profiles; ++k) {
    RngStream gen = root.derive(k);
    const std::size_t n = 1 + gen.uniform_index(6);
    const LicenseId lic("L");
    std::vector<ShareBid> bids;
    for (std::size_t i = 0; i < n; ++i) {
      bids.push_back({BidderId("b" + std::to_string(i)), lic,
                      Share::from_micros(static_cast<std::int64_t>(gen.uniform_index(Share::kScale + 1)))});
    }
    std::vector<Money> revenues(1 + gen.uniform_index(40));
    Money total;
    for (auto& r : revenues) {
      r = Money::from_cents(static_cast<std::int64_t>(gen.uniform_index(1'000'000)));
      total += r;
    }
    const Money v_g = Money::from_cents(static_cast<std::int64_t>(gen.uniform_index(5'000'000)));
    const auto res = run_share_auction(bids, EscrowedValuation::seal(lic, v_g), revenues, root.derive(k).derive("mech"));

    std::vector<Share> sorted;
    for (const auto& b : bids) sorted.push_back(b.share);
    std::sort(sorted.rbegin(), sorted.rend());
    const Share expected_pay = sorted.size() > 1 ? sorted[1] : Share::zero();
    const auto& o = res.outcome;
    if (!o.sold() || o.winning_bid_share() != sorted[0] || o.payment_share() != expected_pay) {
      ++winner_failures;
      continue;
    }
    const Money expected_total = std::min(v_g, apply_share(expected_pay, total));
    if (!res.schedule || res.schedule->cumulative() != expected_total ||
        res.schedule->complete != (expected_total == v_g)) {
      ++schedule_failures;
    }
  }
  rows.add("share", "winner holds top share and pays the second", winner_failures == 0,
           std::to_string(profiles - winner_failures) + "/" + std::to_string(profiles) + " profiles");
  rows.add("share", "schedule total is min(V_g, share x revenue)", schedule_failures == 0,
           std::to_string(profiles - schedule_failures) + "/" + std::to_string(profiles) + " profiles");
}

Mechanism parse_mechanism_or_throw(const std::string& name) {
  if (auto m = parse_mechanism(name)) return *m;
  throw UsageError("unknown mechanism '" + name + "'");
}

void write_output(const std::string& text, const std::string& out_path, bool quiet, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + out_path + " for writing");
  f << text;
  f.close();
  if (!f) throw std::runtime_error("failed writing " + out_path);
  if (!quiet) out << "wrote " << out_path << "\n";
}

}  // namespace

Report run_report(const Scenario& scenario, std::uint64_t seed, std::optional<std::uint64_t> trials,
                  unsigned threads) {
  Report r;
  r.kind = "run";
  r.meta = {{"seed", std::to_string(seed)}};
  r.columns = kSummaryColumns;
  r.add_row(summary_row(scenario, seed, trials, threads));
  return r;
}

Report compare_report(const Scenario& scenario, std::span<const Mechanism> mechanisms, std::uint64_t seed,
                      std::optional<std::uint64_t> trials, unsigned threads) {
  if (mechanisms.empty()) throw UsageError("compare needs at least one mechanism");
  Report r;
  r.kind = "compare";
  r.meta = {{"seed", std::to_string(seed)}};
  r.columns = kSummaryColumns;
  for (auto m : mechanisms) {
    Scenario s = scenario.under(m);
    if (m == Mechanism::samr && !s.samr) s.samr = SamrConfig{};
    if (m == Mechanism::scored && !s.weights) s.weights = ScoreWeights{};
    r.add_row(summary_row(s, seed, trials, threads));
  }
  return r;
}

VerifyResult verify_report(std::span<const std::string> suites, std::uint64_t seed,
                           std::optional<std::uint64_t> trials, unsigned threads) {
  VerifyResult result;
  result.report.kind = "verify";
  result.report.meta = {{"seed", std::to_string(seed)}};
  result.report.columns = {"suite", "check", "pass", "detail"};
  SuiteRows rows{result.report};
  for (const auto& suite : suites) {
    if (suite == "dominance") {
      dominance_suite(rows);
    } else if (suite == "equivalence") {
      equivalence_suite(rows, seed, trials.value_or(kDefaultEquivalenceTrials), threads);
    } else if (suite == "anonymity") {
      anonymity_suite(rows, seed);
    } else if (suite == "share") {
      share_suite(rows, seed);
    } else {
      throw UsageError("unknown suite '" + suite + "'");
    }
  }
  result.all_pass = rows.all_pass;
  return result;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectrum auction mechanisms, fixtures and incentive checks.", "auctionlab"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::uint64_t> seed;
  std::string format_name = "json";
  std::string out_path;
  bool quiet = false;
  unsigned threads = 0;
  app.add_option("--seed", seed, "Master seed (default: the scenario's seed, else 42)");
  app.add_option("--format", format_name, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out_path, "Write the report to this file instead of stdout");
  app.add_flag("--quiet", quiet, "Suppress informational messages");
  app.add_option("--threads", threads, "Worker threads for trials (0 = all cores)");

  std::string scenario_path;
  std::optional<std::uint64_t> trials;
  auto* run = app.add_subcommand("run", "Run a scenario file and report its metrics summary");
  run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--trials", trials, "Override the scenario's trial count");

  std::vector<std::string> mechanism_names;
  auto* compare = app.add_subcommand("compare", "Run a scenario under several mechanisms side by side");
  compare->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  compare->add_option("--mechanisms", mechanism_names, "Comma-separated mechanisms")->delimiter(',')->required();
  compare->add_option("--trials", trials, "Override the scenario's trial count");

  std::string fixture_name;
  std::string as_name;
  auto* fixture = app.add_subcommand("fixture", "Analyse an embedded historical fixture");
  fixture->add_option("name", fixture_name, "india-table1, nz-1990 or australia-1999")->required();
  fixture->add_option("--as", as_name, "Mechanism to replay the fixture under");

  std::vector<std::string> suites;
  auto* verify = app.add_subcommand("verify", "Run property suites; exit 0 iff every check passes");
  verify->add_option("--suite", suites, "dominance, equivalence, anonymity, share (default: all)")->delimiter(',');
  verify->add_option("--trials", trials, "Trials per mechanism for the equivalence suite");

  std::vector<std::string> argv_storage{"auctionlab"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const Format format = *parse_format(format_name);
  try {
    Report report;
    int exit_code = 0;
    if (*run) {
      const auto scenario = load_scenario(scenario_path);
      report = run_report(scenario, seed.value_or(scenario.master_seed), trials, threads);
    } else if (*compare) {
      std::vector<Mechanism> mechs;
      for (const auto& name : mechanism_names) {
        if (!name.empty()) mechs.push_back(parse_mechanism_or_throw(name));
      }
      const auto scenario = load_scenario(scenario_path);
      report = compare_report(scenario, mechs, seed.value_or(scenario.master_seed), trials, threads);
    } else if (*fixture) {
      if (fixture_name == "india-table1") {
        report = india_table1_report();
      } else if (fixture_name == "nz-1990") {
        const Mechanism as = as_name.empty() ? Mechanism::vickrey : parse_mechanism_or_throw(as_name);
        if (as != Mechanism::fpsb && as != Mechanism::vickrey) throw UsageError("nz-1990 supports --as fpsb|vickrey");
        report = nz_1990_report(as);
      } else if (fixture_name == "australia-1999") {
        const Mechanism as = as_name.empty() ? Mechanism::samr : parse_mechanism_or_throw(as_name);
        if (as == Mechanism::scored || as == Mechanism::share) {
          throw UsageError("australia-1999 supports --as samr|fpsb|vickrey");
        }
        report = australia_1999_report(as);
      } else {
        throw UsageError("unknown fixture '" + fixture_name + "'");
      }
    } else if (*verify) {
      if (suites.empty()) suites = {"dominance", "equivalence", "anonymity", "share"};
      auto v = verify_report(suites, seed.value_or(kDefaultSeed), trials, threads);
      report = std::move(v.report);
      exit_code = v.all_pass ? 0 : 1;
      if (!v.all_pass && !quiet) err << "verify: at least one check failed\n";
    }
    write_output(emit(report, format), out_path, quiet, out);
    return exit_code;
  } catch (const montecarlo::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace auctionlab::cli
