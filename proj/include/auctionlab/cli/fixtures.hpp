#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "auctionlab/cli/report.hpp"
#include "auctionlab/core/types.hpp"
#include "auctionlab/mechanisms/outcome.hpp"
#include "auctionlab/mechanisms/sealed.hpp"

namespace auctionlab::cli {

struct CircleBid {
  std::string bidder;
  Money bid;  // $m, as printed

  friend bool operator==(const CircleBid&, const CircleBid&) = default;
};

// bids: first and at least one second bid. no_second: a single bidder.
// no_bids: nobody bid.
enum class CircleStatus { bids, no_second, no_bids };

std::string_view to_string(CircleStatus s);

struct IndiaCircle {
  std::string name;
  LicenseGroup group = LicenseGroup::none;
  std::optional<CircleBid> first;
  // Tied second-place bids are kept as separate records (Karnataka).
  std::vector<CircleBid> seconds;
  CircleStatus status = CircleStatus::bids;

  friend bool operator==(const IndiaCircle&, const IndiaCircle&) = default;
};

struct NzFixture {
  Money winning_bid = Money::from_units(100'000);
  Money second_bid = Money::from_units(6);
  // Not a historical figure; only used to fill the revenue ratio.
  Money synthetic_v_g = Money::from_units(50'000);
};

struct AustraliaFixture {
  Money reservation = Money::from_units(20'000);
  // The sole bidder's value is taken to equal the reservation.
  Money bidder_value = Money::from_units(20'000);
};

struct FixtureSet {
  std::vector<IndiaCircle> india_table1;
  NzFixture nz_1990;
  AustraliaFixture australia_1999;
  ScoreWeights india_weights;
};

// Raw bytes of data/india_table1.tsv, compiled into the binary.
std::string_view embedded_india_table1();

// Throws std::invalid_argument with the line number on malformed input.
std::vector<IndiaCircle> parse_india_table(std::string_view tsv);
// Inverse of parse_india_table; reproduces the embedded file byte for byte.
std::string emit_india_table(std::span<const IndiaCircle> circles);

const FixtureSet& fixtures();

// Fixture analyses behind `auctionlab fixture`.
Report india_table1_report();
Report nz_1990_report(Mechanism as);
Report australia_1999_report(Mechanism as);

}  // namespace auctionlab::cli
