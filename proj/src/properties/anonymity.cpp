#include "auctionlab/properties/anonymity.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "auctionlab/mechanisms/share_auction.hpp"

namespace auctionlab::properties {

namespace {

const LicenseId kLicense{"anon"};

License plain_license() { return {kLicense, "anonymity", LicenseGroup::none, std::nullopt}; }

AuctionOutcome relabel(AuctionOutcome out, const std::map<BidderId, BidderId>& rename) {
  auto map_id = [&](BidderId& id) {
    if (auto it = rename.find(id); it != rename.end()) id = it->second;
  };
  if (out.winner) map_id(*out.winner);
  for (auto& b : out.all_bids) map_id(b.bidder);
  for (auto& d : out.default_trace) map_id(d.bidder);
  return out;
}

std::string describe_mismatch(const AuctionOutcome& expected, const AuctionOutcome& actual) {
  if (expected.winner != actual.winner) {
    return "winner: expected " + (expected.winner ? expected.winner->value : "<unsold>") + ", got " +
           (actual.winner ? actual.winner->value : "<unsold>");
  }
  if (expected.payment != actual.payment) return "payment differs";
  if (expected.winning_bid != actual.winning_bid) return "winning bid differs";
  if (expected.all_bids != actual.all_bids) return "disclosed bid record differs";
  if (expected.rounds_used != actual.rounds_used) return "rounds used differ";
  return "outcome differs";
}

}  // namespace

AuctionOutcome run_profile(Mechanism mechanism, std::span<const ProfileEntry> profile, const RngStream& rng,
                           const AnonymitySettings& settings) {
  const License license = plain_license();
  switch (mechanism) {
    case Mechanism::fpsb:
    case Mechanism::vickrey: {
      std::vector<PriceBid> bids;
      for (const auto& p : profile) bids.push_back({p.id, kLicense, p.amount});
      return mechanism == Mechanism::fpsb ? run_first_price_sealed(bids, license, rng)
                                          : run_vickrey_sealed(bids, license, rng);
    }
    case Mechanism::scored: {
      std::vector<ScoredBid> bids;
      for (const auto& p : profile) {
        auto attrs = p.attributes;
        attrs.license_fee = p.amount;
        bids.push_back({p.id, kLicense, attrs});
      }
      return run_scored_sealed(bids, settings.weights, license, rng);
    }
    case Mechanism::samr: {
      std::vector<SamrAgent> agents;
      for (const auto& p : profile) agents.push_back({p.id, {{kLicense, p.amount}}});
      const std::vector<License> licenses{license};
      return run_samr(agents, licenses, settings.samr, rng).outcomes.front();
    }
    case Mechanism::share: {
      std::vector<ShareBid> bids;
      for (const auto& p : profile) bids.push_back({p.id, kLicense, p.share});
      return run_share_auction(bids, EscrowedValuation::seal(kLicense, settings.share_v_g), settings.share_revenues,
                               rng)
          .outcome;
    }
  }
  throw std::invalid_argument("unknown mechanism");
}

bool has_ties(Mechanism mechanism, std::span<const ProfileEntry> profile, const AnonymitySettings& settings) {
  switch (mechanism) {
    case Mechanism::share: {
      std::set<Share> seen;
      for (const auto& p : profile) {
        if (!seen.insert(p.share).second) return true;
      }
      return false;
    }
    case Mechanism::scored: {
      Money max_fee;
      for (const auto& p : profile) max_fee = std::max(max_fee, p.amount);
      std::set<double> seen;
      for (const auto& p : profile) {
        auto attrs = p.attributes;
        attrs.license_fee = p.amount;
        if (!seen.insert(score_bid(attrs, max_fee, settings.weights)).second) return true;
      }
      return false;
    }
    default: {
      std::set<Money> seen;
      for (const auto& p : profile) {
        if (!seen.insert(p.amount).second) return true;
      }
      return false;
    }
  }
}

AnonymityResult anonymity_check(Mechanism mechanism, std::span<const ProfileEntry> profile,
                                std::span<const std::size_t> permutation, const RngStream& rng,
                                const AnonymitySettings& settings) {
  if (permutation.size() != profile.size()) throw std::invalid_argument("permutation size differs from profile");
  {
    std::vector<std::size_t> sorted(permutation.begin(), permutation.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted[i] != i) throw std::invalid_argument("not a permutation");
    }
  }
  if (has_ties(mechanism, profile, settings)) {
    throw std::invalid_argument("anonymity check requires a tie-free profile");
  }

  std::vector<ProfileEntry> relabelled(profile.begin(), profile.end());
  std::map<BidderId, BidderId> rename;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    relabelled[i].id = profile[permutation[i]].id;
    rename.emplace(profile[i].id, relabelled[i].id);
  }

  const auto original = run_profile(mechanism, profile, rng, settings);
  const auto permuted = run_profile(mechanism, relabelled, rng, settings);
  const auto expected = relabel(original, rename);

  AnonymityResult result;
  result.permutation.assign(permutation.begin(), permutation.end());
  if (!(expected == permuted)) {
    result.pass = false;
    result.detail = describe_mismatch(expected, permuted);
  }
  return result;
}

AnonymityBatteryResult anonymity_battery(Mechanism mechanism, std::size_t profiles, std::uint64_t seed,
                                         const AnonymitySettings& settings) {
  AnonymityBatteryResult out;
  out.mechanism = mechanism;
  const RngStream root = RngStream(seed).derive("anonymity").derive(std::string(to_string(mechanism)));
  for (std::size_t k = 0; k < profiles; ++k) {
    RngStream gen = root.derive(k).derive("profile");
    std::vector<ProfileEntry> profile;
    do {
      profile.clear();
      const std::size_t n = 2 + gen.uniform_index(5);
      for (std::size_t i = 0; i < n; ++i) {
        ProfileEntry e;
        e.id = BidderId("bidder-" + std::to_string(i + 1));
        e.amount = Money::from_units(static_cast<std::int64_t>(1 + gen.uniform_index(400)));
        e.share = Share::from_micros(static_cast<std::int64_t>(1 + gen.uniform_index(Share::kScale)));
        e.attributes.rollout_speed = gen.uniform01();
        e.attributes.rural_coverage = gen.uniform01();
        e.attributes.indigenous_content = gen.uniform01();
        profile.push_back(std::move(e));
      }
    } while (has_ties(mechanism, profile, settings));

    std::vector<std::size_t> perm(profile.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    RngStream shuffle = root.derive(k).derive("permutation");
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[shuffle.uniform_index(i)]);

    const auto r = anonymity_check(mechanism, profile, perm, root.derive(k).derive("mechanism"), settings);
    ++out.profiles;
    if (!r.pass) {
      ++out.failures;
      if (out.first_failure.empty()) out.first_failure = "profile " + std::to_string(k) + ": " + r.detail;
    }
  }
  return out;
}

}  // namespace auctionlab::properties
