#include "auctionlab/core/money.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace auctionlab {

namespace {

constexpr std::int64_t kMaxCents = std::numeric_limits<std::int64_t>::max() / 4;

std::string format_cents(std::int64_t cents, bool compact) {
  std::string out = std::to_string(cents / 100);
  const auto frac = static_cast<int>(cents % 100);
  if (!compact) {
    out += '.';
    out += static_cast<char>('0' + frac / 10);
    out += static_cast<char>('0' + frac % 10);
    return out;
  }
  if (frac == 0) return out;
  out += '.';
  out += static_cast<char>('0' + frac / 10);
  if (frac % 10 != 0) out += static_cast<char>('0' + frac % 10);
  return out;
}

}  // namespace

Money Money::from_cents(std::int64_t cents) {
  if (cents < 0) throw std::domain_error("Money cannot be negative");
  if (cents > kMaxCents) throw std::overflow_error("Money amount out of range");
  return Money(cents);
}

Money Money::from_units(std::int64_t units) {
  if (units > kMaxCents / 100) throw std::overflow_error("Money amount out of range");
  return from_cents(units * 100);
}

Money Money::from_double(double amount) {
  if (!std::isfinite(amount)) throw std::domain_error("Money must be finite");
  if (amount < 0.0) throw std::domain_error("Money cannot be negative");
  const double cents = std::round(amount * 100.0);
  if (cents > static_cast<double>(kMaxCents)) throw std::overflow_error("Money amount out of range");
  return Money(static_cast<std::int64_t>(cents));
}

Money Money::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty money literal");
  std::int64_t whole = 0;
  std::int64_t frac = 0;
  int frac_digits = 0;
  bool seen_point = false;
  bool seen_digit = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_point) throw std::invalid_argument("malformed money literal: " + std::string(text));
      seen_point = true;
      continue;
    }
    if (c < '0' || c > '9') throw std::invalid_argument("malformed money literal: " + std::string(text));
    seen_digit = true;
    const int d = c - '0';
    if (!seen_point) {
      if (whole > (kMaxCents / 100 - d) / 10) throw std::overflow_error("Money amount out of range");
      whole = whole * 10 + d;
    } else if (frac_digits < 2) {
      frac = frac * 10 + d;
      ++frac_digits;
    } else if (d != 0) {
      throw std::invalid_argument("money has more than 2 decimals: " + std::string(text));
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed money literal: " + std::string(text));
  if (frac_digits == 1) frac *= 10;
  return Money(whole * 100 + frac);
}

std::string Money::to_string() const { return format_cents(cents_, false); }

std::string Money::to_compact_string() const { return format_cents(cents_, true); }

Money& Money::operator+=(Money other) {
  if (cents_ > kMaxCents - other.cents_) throw std::overflow_error("Money addition overflow");
  cents_ += other.cents_;
  return *this;
}

Money& Money::operator-=(Money other) {
  if (other.cents_ > cents_) throw std::domain_error("Money subtraction below zero");
  cents_ -= other.cents_;
  return *this;
}

Money scale(Money m, double factor) {
  if (!std::isfinite(factor) || factor < 0.0) throw std::domain_error("scale factor must be finite and >= 0");
  return Money::from_cents(static_cast<std::int64_t>(std::round(static_cast<double>(m.cents()) * factor)));
}

std::ostream& operator<<(std::ostream& os, Money m) { return os << m.to_string(); }

}  // namespace auctionlab
