#pragma once

// Small hand-rolled generators for property tests. Each test seeds its own
// engine so failures reproduce from the printed case index.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "auctionlab/core/money.hpp"
#include "auctionlab/core/share.hpp"
#include "auctionlab/core/types.hpp"

namespace gen {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(eng_);
  }
  std::size_t size(std::size_t lo, std::size_t hi) {
    return static_cast<std::size_t>(integer(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
  }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  bool coin() { return integer(0, 1) == 1; }

  auctionlab::Money money(std::int64_t max_cents) { return auctionlab::Money::from_cents(integer(0, max_cents)); }
  auctionlab::Money units(std::int64_t lo, std::int64_t hi) { return auctionlab::Money::from_units(integer(lo, hi)); }
  auctionlab::Share share() { return auctionlab::Share::from_micros(integer(0, auctionlab::Share::kScale)); }

  std::vector<auctionlab::Money> revenues(std::size_t max_periods, std::int64_t max_cents) {
    std::vector<auctionlab::Money> out(size(1, max_periods));
    for (auto& r : out) r = money(max_cents);
    return out;
  }

  std::vector<std::size_t> permutation(std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    std::shuffle(p.begin(), p.end(), eng_);
    return p;
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

inline auctionlab::BidderId bidder(std::size_t i) { return auctionlab::BidderId("b" + std::to_string(i)); }

}  // namespace gen
