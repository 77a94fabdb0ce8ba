#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "auctionlab/core/rng.hpp"
#include "auctionlab/core/types.hpp"
#include "auctionlab/mechanisms/outcome.hpp"

namespace auctionlab {

struct PaymentEntry {
  std::size_t period = 0;  // 1-based
  Money revenue;
  Money payment;

  friend bool operator==(const PaymentEntry&, const PaymentEntry&) = default;
};

struct PaymentSchedule {
  Share share_paid;
  std::vector<PaymentEntry> entries;
  bool complete = false;
  Money shortfall;

  Money cumulative() const;

  friend bool operator==(const PaymentSchedule&, const PaymentSchedule&) = default;
};

// Pays share × revenue each period until the cumulative total reaches v_g,
// pro-rating the final period. Rounding is carried: the cumulative total
// after period t is exactly min(v_g, share × (revenue_1 + ... + revenue_t))
// rounded to the cent, so individual periods may differ from share × revenue
// by at most one cent. If the stream ends first, complete is false and
// shortfall = v_g - cumulative.
PaymentSchedule compute_payment_schedule(Share share, std::span<const Money> revenues, Money v_g);

struct ShareAuctionResult;
class EscrowedValuation;

ShareAuctionResult run_share_auction(std::span<const ShareBid> bids, EscrowedValuation escrow,
                                     std::span<const Money> revenues, const RngStream& rng);

// The government's valuation lodged with a trusted third party. Nothing can
// read it while sealed; only the share auction reveals it, and only after
// the winner is determined.
class EscrowedValuation {
 public:
  static EscrowedValuation seal(LicenseId license, Money v_g) {
    return EscrowedValuation(std::move(license), v_g);
  }

  const LicenseId& license() const noexcept { return license_; }
  bool revealed() const noexcept { return revealed_; }
  std::optional<Money> revealed_value() const {
    return revealed_ ? std::optional<Money>(v_g_) : std::nullopt;
  }

 private:
  EscrowedValuation(LicenseId license, Money v_g) : license_(std::move(license)), v_g_(v_g) {}

  friend ShareAuctionResult run_share_auction(std::span<const ShareBid>, EscrowedValuation,
                                              std::span<const Money>, const RngStream&);

  LicenseId license_;
  Money v_g_;
  bool revealed_ = false;
};

struct ShareAuctionResult {
  AuctionOutcome outcome;
  EscrowedValuation escrow;
  std::optional<PaymentSchedule> schedule;  // present iff sold
};

}  // namespace auctionlab
