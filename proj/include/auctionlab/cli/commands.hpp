#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "auctionlab/cli/report.hpp"
#include "auctionlab/mechanisms/outcome.hpp"
#include "auctionlab/montecarlo/scenario.hpp"

namespace auctionlab::cli {

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr std::uint64_t kDefaultEquivalenceTrials = 100'000;

// One row of MetricsSummary plus mean axiom-scorecard columns.
Report run_report(const montecarlo::Scenario& scenario, std::uint64_t seed, std::optional<std::uint64_t> trials,
                  unsigned threads);

// The scenario re-run under each mechanism in turn, one row per mechanism.
// Missing samr/weights config is filled with defaults; a missing share setup
// is a validation error.
Report compare_report(const montecarlo::Scenario& scenario, std::span<const Mechanism> mechanisms,
                      std::uint64_t seed, std::optional<std::uint64_t> trials, unsigned threads);

struct VerifyResult {
  Report report;
  bool all_pass = true;
};

// Suites: dominance, equivalence, anonymity, share. `trials` overrides the
// equivalence trial count.
VerifyResult verify_report(std::span<const std::string> suites, std::uint64_t seed,
                           std::optional<std::uint64_t> trials, unsigned threads);

// Entry point behind the auctionlab executable. args excludes the program
// name. Returns 0 on success, 1 on runtime failure or a failed verify suite,
// 2 on invalid input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace auctionlab::cli
