#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "auctionlab/core/rng.hpp"
#include "auctionlab/core/types.hpp"
#include "auctionlab/mechanisms/outcome.hpp"
#include "auctionlab/mechanisms/samr.hpp"
#include "auctionlab/mechanisms/sealed.hpp"

namespace auctionlab::properties {

// One bidder in a mechanism-agnostic profile. `amount` is the price bid
// (fpsb, vickrey), the fee (scored) or the value (samr); `share` is read by
// the share auction only.
struct ProfileEntry {
  BidderId id;
  Money amount;
  Share share;
  ScoredAttributes attributes;
};

struct AnonymitySettings {
  ScoreWeights weights;
  SamrConfig samr{SamrIncrement::fixed(Money::from_units(1)), ActivityRule::must_act_each_round, 100'000, Money{}};
  Money share_v_g = Money::from_units(100);
  std::vector<Money> share_revenues = std::vector<Money>(20, Money::from_units(50));
};

struct AnonymityResult {
  bool pass = true;
  std::vector<std::size_t> permutation;
  std::string detail;  // first mismatch, empty on pass
};

// Runs `mechanism` on `profile` and on the relabelled profile in which entry
// i carries the id of entry permutation[i] (positions unchanged), and checks
// that the second outcome is the first with every bidder id renamed.
// Throws std::invalid_argument for a profile with ties or an invalid
// permutation.
AnonymityResult anonymity_check(Mechanism mechanism, std::span<const ProfileEntry> profile,
                                std::span<const std::size_t> permutation, const RngStream& rng,
                                const AnonymitySettings& settings = {});

// Runs `mechanism` on a profile; exposed for tests and the CLI.
AuctionOutcome run_profile(Mechanism mechanism, std::span<const ProfileEntry> profile, const RngStream& rng,
                           const AnonymitySettings& settings = {});

bool has_ties(Mechanism mechanism, std::span<const ProfileEntry> profile, const AnonymitySettings& settings = {});

struct AnonymityBatteryResult {
  Mechanism mechanism = Mechanism::vickrey;
  std::size_t profiles = 0;
  std::size_t failures = 0;
  std::string first_failure;  // empty when every profile passed
};

// Random tie-free profiles of 2 to 6 bidders, each checked against a random
// permutation. Everything is drawn from `seed`.
AnonymityBatteryResult anonymity_battery(Mechanism mechanism, std::size_t profiles, std::uint64_t seed,
                                         const AnonymitySettings& settings = {});

}  // namespace auctionlab::properties
