#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace auctionlab {

// Seeded random stream addressed by (master seed, derivation path).
//
// Derivation is a pure function of the parent's key, never of how many draws
// the parent has made, so `root.derive("trial").derive(7)` is the same stream
// no matter what else consumed `root`. Draws use std::mt19937_64 (whose output
// sequence is fixed by the standard) and hand-written transforms instead of
// the implementation-defined <random> distributions.
class RngStream {
 public:
  explicit RngStream(std::uint64_t master_seed);

  RngStream derive(std::string_view label) const;
  RngStream derive(std::uint64_t index) const;

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t key() const noexcept { return key_; }
  const std::vector<std::string>& path() const noexcept { return path_; }
  // "42/trial/7"
  std::string describe() const;

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform01();
  double uniform(double lo, double hi);
  // Marsaglia polar method.
  double normal(double mean, double sd);
  // Unbiased draw from {0, ..., n - 1}; n must be positive.
  std::size_t uniform_index(std::size_t n);

 private:
  RngStream(std::uint64_t master_seed, std::uint64_t key, std::vector<std::string> path);
  std::mt19937_64& engine();

  std::uint64_t master_seed_;
  std::uint64_t key_;
  std::vector<std::string> path_;
  std::optional<std::mt19937_64> engine_;
};

// SplitMix64 finaliser; exposed for seed derivation elsewhere.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace auctionlab
