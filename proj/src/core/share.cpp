#include "auctionlab/core/share.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace auctionlab {

Share Share::from_micros(std::int64_t micros) {
  if (micros < 0 || micros > kScale) throw std::domain_error("Share must lie in [0, 1]");
  return Share(micros);
}

Share Share::from_double(double value) {
  if (!std::isfinite(value)) throw std::domain_error("Share must be finite");
  const auto micros = static_cast<std::int64_t>(std::llround(value * kScale));
  return from_micros(micros);
}

Share Share::clamped(double value) {
  if (std::isnan(value) || value <= 0.0) return zero();
  if (value >= 1.0) return one();
  return from_double(value);
}

Share Share::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty share literal");
  std::int64_t whole = 0;
  std::int64_t frac = 0;
  int frac_digits = 0;
  bool seen_point = false;
  bool seen_digit = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_point) throw std::invalid_argument("malformed share literal: " + std::string(text));
      seen_point = true;
      continue;
    }
    if (c < '0' || c > '9') throw std::invalid_argument("malformed share literal: " + std::string(text));
    seen_digit = true;
    const int d = c - '0';
    if (!seen_point) {
      whole = whole * 10 + d;
      if (whole > 1) throw std::domain_error("Share must lie in [0, 1]");
    } else if (frac_digits < 6) {
      frac = frac * 10 + d;
      ++frac_digits;
    } else if (d != 0) {
      throw std::invalid_argument("share has more than 6 decimals: " + std::string(text));
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed share literal: " + std::string(text));
  for (int i = frac_digits; i < 6; ++i) frac *= 10;
  return from_micros(whole * kScale + frac);
}

std::string Share::to_string() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld.%06lld", static_cast<long long>(micros_ / kScale),
                static_cast<long long>(micros_ % kScale));
  return buf;
}

Money apply_share(Share share, Money amount) {
  const __int128 product = static_cast<__int128>(amount.cents()) * share.micros();
  const __int128 rounded = (product + Share::kScale / 2) / Share::kScale;
  return Money::from_cents(static_cast<std::int64_t>(rounded));
}

std::ostream& operator<<(std::ostream& os, Share s) { return os << s.to_string(); }

}  // namespace auctionlab
