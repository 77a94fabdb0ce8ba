#include "auctionlab/core/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace auctionlab {

namespace {

constexpr std::uint64_t kLabelSalt = 0x6c6162656c5f5f5fULL;
constexpr std::uint64_t kIndexSalt = 0x696e6465785f5f5fULL;

std::uint64_t fnv1a(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t master_seed)
    : master_seed_(master_seed), key_(mix64(master_seed)) {}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t key, std::vector<std::string> path)
    : master_seed_(master_seed), key_(key), path_(std::move(path)) {}

RngStream RngStream::derive(std::string_view label) const {
  auto path = path_;
  path.emplace_back(label);
  return RngStream(master_seed_, mix64(key_ ^ mix64(fnv1a(label) ^ kLabelSalt)), std::move(path));
}

RngStream RngStream::derive(std::uint64_t index) const {
  auto path = path_;
  path.push_back(std::to_string(index));
  return RngStream(master_seed_, mix64(key_ ^ mix64(index ^ kIndexSalt)), std::move(path));
}

std::string RngStream::describe() const {
  std::string out = std::to_string(master_seed_);
  for (const auto& p : path_) {
    out += '/';
    out += p;
  }
  return out;
}

std::mt19937_64& RngStream::engine() {
  if (!engine_) engine_.emplace(key_);
  return *engine_;
}

std::uint64_t RngStream::next_u64() { return engine()(); }

double RngStream::uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double RngStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

double RngStream::normal(double mean, double sd) {
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  return mean + sd * u * std::sqrt(-2.0 * std::log(s) / s);
}

std::size_t RngStream::uniform_index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index requires n > 0");
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = std::uint64_t(-1) - (std::uint64_t(-1) % bound);
  std::uint64_t x = 0;
  do {
    x = next_u64();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

}  // namespace auctionlab
