#include "auctionlab/mechanisms/outcome.hpp"

#include <array>
#include <stdexcept>
#include <utility>

namespace auctionlab {

namespace {

constexpr std::array<std::pair<Mechanism, std::string_view>, 5> kNames{{
    {Mechanism::fpsb, "fpsb"},
    {Mechanism::vickrey, "vickrey"},
    {Mechanism::scored, "scored"},
    {Mechanism::samr, "samr"},
    {Mechanism::share, "share"},
}};

template <typename T>
T get_amount(const std::optional<Amount>& a, const char* what) {
  if (!a) throw std::logic_error(std::string(what) + ": outcome is unsold");
  if (const auto* v = std::get_if<T>(&*a)) return *v;
  throw std::logic_error(std::string(what) + ": amount has the wrong kind");
}

}  // namespace

std::string_view to_string(Mechanism m) {
  for (const auto& [mech, name] : kNames) {
    if (mech == m) return name;
  }
  return "fpsb";
}

std::optional<Mechanism> parse_mechanism(std::string_view text) {
  for (const auto& [mech, name] : kNames) {
    if (name == text) return mech;
  }
  return std::nullopt;
}

bool is_price_mechanism(Mechanism m) { return m != Mechanism::share; }

std::string to_string(const Amount& a) {
  return std::visit([](const auto& v) { return v.to_string(); }, a);
}

Money AuctionOutcome::payment_money() const { return get_amount<Money>(payment, "payment_money"); }
Money AuctionOutcome::winning_bid_money() const {
  return get_amount<Money>(winning_bid, "winning_bid_money");
}
Share AuctionOutcome::payment_share() const { return get_amount<Share>(payment, "payment_share"); }
Share AuctionOutcome::winning_bid_share() const {
  return get_amount<Share>(winning_bid, "winning_bid_share");
}

Money AuctionOutcome::total_penalties() const {
  Money total;
  for (const auto& d : default_trace) total += d.penalty;
  return total;
}

}  // namespace auctionlab
