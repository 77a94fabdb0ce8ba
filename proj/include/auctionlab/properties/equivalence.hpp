#pragma once

#include <cstdint>

namespace auctionlab::properties {

struct RevenueEquivalenceResult {
  int bidders = 0;
  std::uint64_t trials = 0;
  double expected = 0.0;  // (n - 1) / (n + 1)
  double mean_fpsb = 0.0;
  double se_fpsb = 0.0;
  double mean_vickrey = 0.0;
  double se_vickrey = 0.0;
  double pooled_se = 0.0;
  bool pass = false;
};

// n risk-neutral bidders with iid uniform[0, 1] values. First-price bidders
// play the symmetric equilibrium; second-price bidders bid truthfully, or
// shade by `vickrey_shading` to exhibit a failing case. Passes iff the means
// agree within 3 pooled standard errors and each lies within 3 of its own
// standard errors of (n - 1) / (n + 1).
RevenueEquivalenceResult revenue_equivalence_test(int bidders, std::uint64_t trials, std::uint64_t seed,
                                                  double vickrey_shading = 0.0, unsigned threads = 0);

}  // namespace auctionlab::properties
