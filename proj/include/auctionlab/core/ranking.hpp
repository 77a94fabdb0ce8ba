#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "auctionlab/core/rng.hpp"
#include "auctionlab/core/types.hpp"

namespace auctionlab {

inline Money rank_key(const PriceBid& b) { return b.amount; }
inline Share rank_key(const ShareBid& b) { return b.share; }

template <typename Bid>
struct RankedBid {
  std::size_t input_index;
  Bid bid;
};

// Bids of equal amount, kept in their original input order.
template <typename Bid>
using TieGroup = std::vector<RankedBid<Bid>>;

template <typename Bid>
struct Ranking {
  std::vector<TieGroup<Bid>> groups;  // strictly descending by amount

  bool empty() const noexcept { return groups.empty(); }
  std::size_t size() const noexcept {
    std::size_t n = 0;
    for (const auto& g : groups) n += g.size();
    return n;
  }
};

// Orders bids descending by amount, grouping equal amounts. Throws
// std::invalid_argument when the bids reference more than one license.
template <typename Bid>
Ranking<Bid> rank_bids(std::span<const Bid> bids) {
  Ranking<Bid> out;
  if (bids.empty()) return out;
  for (const auto& b : bids) {
    if (b.license != bids.front().license) {
      throw std::invalid_argument("rank_bids: bids reference different licenses ('" +
                                  bids.front().license.value + "' and '" + b.license.value + "')");
    }
  }
  std::vector<std::size_t> order(bids.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return rank_key(bids[a]) > rank_key(bids[b]);
  });
  for (std::size_t idx : order) {
    if (out.groups.empty() || rank_key(out.groups.back().front().bid) != rank_key(bids[idx])) {
      out.groups.emplace_back();
    }
    out.groups.back().push_back({idx, bids[idx]});
  }
  return out;
}

template <typename Bid>
Ranking<Bid> rank_bids(const std::vector<Bid>& bids) {
  return rank_bids(std::span<const Bid>(bids));
}

// Stream used for every tie-break on `license`: (master seed, license, "tie").
inline RngStream tie_stream(const RngStream& root, const LicenseId& license) {
  return root.derive(license.value).derive("tie");
}

// Position (within `group_size`) of the uniformly drawn winner.
inline std::size_t break_tie_index(std::size_t group_size, RngStream rng) {
  if (group_size == 0) throw std::invalid_argument("break_tie: empty tie group");
  if (group_size == 1) return 0;
  return rng.uniform_index(group_size);
}

template <typename Bid>
const RankedBid<Bid>& break_tie(const TieGroup<Bid>& group, RngStream rng) {
  return group[break_tie_index(group.size(), std::move(rng))];
}

}  // namespace auctionlab
