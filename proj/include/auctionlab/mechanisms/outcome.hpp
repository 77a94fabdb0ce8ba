#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "auctionlab/core/types.hpp"

namespace auctionlab {

enum class Mechanism { fpsb, vickrey, scored, samr, share };

std::string_view to_string(Mechanism m);
std::optional<Mechanism> parse_mechanism(std::string_view text);
bool is_price_mechanism(Mechanism m);

// Price mechanisms carry Money, the share auction carries Share.
using Amount = std::variant<Money, Share>;

std::string to_string(const Amount& a);

struct DisclosedBid {
  BidderId bidder;
  Amount amount;
  std::uint32_t round = 1;
  std::optional<double> score;  // scored sealed-bid only

  friend bool operator==(const DisclosedBid&, const DisclosedBid&) = default;
};

struct DefaultRecord {
  BidderId bidder;
  Money bid;
  Money penalty;

  friend bool operator==(const DefaultRecord&, const DefaultRecord&) = default;
};

struct AuctionOutcome {
  Mechanism mechanism = Mechanism::fpsb;
  LicenseId license;
  std::optional<BidderId> winner;
  std::optional<Amount> payment;
  std::optional<Amount> winning_bid;
  // Every submitted bid exactly once, in submission order.
  std::vector<DisclosedBid> all_bids;
  std::uint32_t rounds_used = 1;
  std::vector<DefaultRecord> default_trace;
  bool tie_broken = false;
  // false only when an ascending auction hit its round cap.
  bool terminated = true;

  bool sold() const noexcept { return winner.has_value(); }
  // Throws std::logic_error when unsold or when the payment is a Share.
  Money payment_money() const;
  Money winning_bid_money() const;
  Share payment_share() const;
  Share winning_bid_share() const;
  // Sum of default penalties; these are itemised separately from payment.
  Money total_penalties() const;

  friend bool operator==(const AuctionOutcome&, const AuctionOutcome&) = default;
};

}  // namespace auctionlab
