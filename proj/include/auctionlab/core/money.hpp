#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace auctionlab {

// Non-negative currency amount, held as an integer number of cents.
// All fixtures use one abstract currency unit; no FX handling.
class Money {
 public:
  constexpr Money() = default;

  static Money from_cents(std::int64_t cents);
  static Money from_units(std::int64_t units);
  // Rounds half away from zero to the nearest cent. Negative or non-finite
  // input throws std::domain_error.
  static Money from_double(double amount);
  // Accepts "12", "12.3", "12.30". Rejects signs, exponents and more than
  // two significant decimals ("1.230" is fine, "1.234" is not).
  static Money parse(std::string_view text);

  constexpr std::int64_t cents() const noexcept { return cents_; }
  double to_double() const noexcept { return static_cast<double>(cents_) / 100.0; }
  bool is_zero() const noexcept { return cents_ == 0; }

  // Always two decimals: "12.30".
  std::string to_string() const;
  // Shortest exact form: "12.3", "319", "0.4".
  std::string to_compact_string() const;

  Money& operator+=(Money other);
  // Throws std::domain_error when the result would be negative.
  Money& operator-=(Money other);

  friend Money operator+(Money a, Money b) { return a += b; }
  friend Money operator-(Money a, Money b) { return a -= b; }
  friend constexpr bool operator==(Money, Money) = default;
  friend constexpr auto operator<=>(Money, Money) = default;

 private:
  explicit constexpr Money(std::int64_t cents) : cents_(cents) {}

  std::int64_t cents_ = 0;
};

// a - b in cents, may be negative.
inline std::int64_t signed_difference(Money a, Money b) { return a.cents() - b.cents(); }

// m × factor rounded to the nearest cent; factor must be finite and >= 0.
Money scale(Money m, double factor);

std::ostream& operator<<(std::ostream& os, Money m);

}  // namespace auctionlab
