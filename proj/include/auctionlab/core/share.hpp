#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "auctionlab/core/money.hpp"

namespace auctionlab {

// Fraction of revenue in [0, 1] at a resolution of 1e-6.
class Share {
 public:
  static constexpr std::int64_t kScale = 1'000'000;

  constexpr Share() = default;

  static Share from_micros(std::int64_t micros);
  // Rounds to the nearest micro-share; values outside [0, 1] throw.
  static Share from_double(double value);
  // Same as from_double but clamps into [0, 1] first (NaN maps to 0).
  static Share clamped(double value);
  static Share parse(std::string_view text);

  static constexpr Share zero() { return Share(0); }
  static constexpr Share one() { return Share(kScale); }

  constexpr std::int64_t micros() const noexcept { return micros_; }
  double to_double() const noexcept { return static_cast<double>(micros_) / kScale; }
  // Six decimals: "0.080000".
  std::string to_string() const;

  friend constexpr bool operator==(Share, Share) = default;
  friend constexpr auto operator<=>(Share, Share) = default;

 private:
  explicit constexpr Share(std::int64_t micros) : micros_(micros) {}

  std::int64_t micros_ = 0;
};

// share × amount, rounded half-up to the nearest cent.
Money apply_share(Share share, Money amount);

// Share difference a - b as a real number (may be negative).
inline double share_difference(Share a, Share b) {
  return static_cast<double>(a.micros() - b.micros()) / Share::kScale;
}

std::ostream& operator<<(std::ostream& os, Share s);

}  // namespace auctionlab
