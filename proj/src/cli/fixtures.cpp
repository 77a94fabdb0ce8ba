#include "auctionlab/cli/fixtures.hpp"

#include <stdexcept>

#include "auctionlab/core/rng.hpp"
#include "auctionlab/mechanisms/samr.hpp"
#include "auctionlab/properties/scorecard.hpp"

namespace auctionlab::cli {

namespace {

constexpr std::string_view kTableComment =
    "# Bidding for cellular services in India, 1995 circle auctions. Bids in $m as printed.";
constexpr std::string_view kTableHeader = "circle\tgroup\tbidder_1\tbid_1\tbidder_2\tbid_2\tstatus";

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

CircleStatus parse_status(std::string_view s) {
  if (s == "bids") return CircleStatus::bids;
  if (s == "no_second") return CircleStatus::no_second;
  if (s == "no_bids") return CircleStatus::no_bids;
  throw std::invalid_argument("unknown status '" + std::string(s) + "'");
}

IndiaCircle parse_row(std::string_view line) {
  const auto f = split(line, '\t');
  if (f.size() != 7) throw std::invalid_argument("expected 7 tab-separated fields");
  IndiaCircle c;
  c.name = std::string(f[0]);
  if (c.name.empty()) throw std::invalid_argument("empty circle name");
  c.group = parse_license_group(f[1]);
  c.status = parse_status(f[6]);
  if (!f[2].empty() || !f[3].empty()) {
    if (f[2].empty() || f[3].empty()) throw std::invalid_argument("first bidder and bid must both be present");
    c.first = CircleBid{std::string(f[2]), Money::parse(f[3])};
  }
  if (!f[4].empty() || !f[5].empty()) {
    const auto names = split(f[4], ';');
    const auto bids = split(f[5], ';');
    if (names.size() != bids.size()) throw std::invalid_argument("second bidders and bids differ in count");
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i].empty()) throw std::invalid_argument("empty second bidder name");
      c.seconds.push_back({std::string(names[i]), Money::parse(bids[i])});
    }
  }
  const bool shape_ok = (c.status == CircleStatus::bids && c.first && !c.seconds.empty()) ||
                        (c.status == CircleStatus::no_second && c.first && c.seconds.empty()) ||
                        (c.status == CircleStatus::no_bids && !c.first && c.seconds.empty());
  if (!shape_ok) throw std::invalid_argument("bids do not match status " + std::string(to_string(c.status)));
  return c;
}

License circle_license(const IndiaCircle& c) { return {LicenseId(c.name), c.name, c.group, std::nullopt}; }

std::vector<PriceBid> circle_bids(const IndiaCircle& c) {
  std::vector<PriceBid> bids;
  const LicenseId id(c.name);
  if (c.first) bids.push_back({BidderId(c.first->bidder), id, c.first->bid});
  for (const auto& s : c.seconds) bids.push_back({BidderId(s.bidder), id, s.bid});
  return bids;
}

RngStream fixture_rng(std::string_view name) { return RngStream(0).derive("fixture").derive(name); }

Cell winner_cell(const AuctionOutcome& o) {
  if (!o.winner) return std::monostate{};
  return o.winner->value;
}

}  // namespace

std::string_view to_string(CircleStatus s) {
  switch (s) {
    case CircleStatus::bids: return "bids";
    case CircleStatus::no_second: return "no_second";
    case CircleStatus::no_bids: return "no_bids";
  }
  return "bids";
}

std::vector<IndiaCircle> parse_india_table(std::string_view tsv) {
  std::vector<IndiaCircle> out;
  bool header_seen = false;
  std::size_t line_no = 0;
  for (auto line : split(tsv, '\n')) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kTableHeader) throw std::invalid_argument("line " + std::to_string(line_no) + ": bad header");
      header_seen = true;
      continue;
    }
    try {
      out.push_back(parse_row(line));
    } catch (const std::exception& e) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!header_seen) throw std::invalid_argument("missing header row");
  return out;
}

std::string emit_india_table(std::span<const IndiaCircle> circles) {
  std::string out;
  out += kTableComment;
  out += '\n';
  out += kTableHeader;
  out += '\n';
  for (const auto& c : circles) {
    out += c.name + '\t' + std::string(to_string(c.group)) + '\t';
    if (c.first) out += c.first->bidder + '\t' + c.first->bid.to_compact_string();
    else out += '\t';
    out += '\t';
    std::string names;
    std::string bids;
    for (std::size_t i = 0; i < c.seconds.size(); ++i) {
      if (i) {
        names += ';';
        bids += ';';
      }
      names += c.seconds[i].bidder;
      bids += c.seconds[i].bid.to_compact_string();
    }
    out += names + '\t' + bids + '\t' + std::string(to_string(c.status)) + '\n';
  }
  return out;
}

const FixtureSet& fixtures() {
  static const FixtureSet set = [] {
    FixtureSet f;
    f.india_table1 = parse_india_table(embedded_india_table1());
    return f;
  }();
  return set;
}

Report india_table1_report() {
  Report r;
  r.kind = "fixture/india-table1";
  r.columns = {"circle",       "group",        "bidder_1",        "bid_1",     "bidder_2", "bid_2",
               "status",       "fpsb_winner",  "fpsb_revenue",    "vickrey_revenue", "gap_ratio", "note"};
  Money fpsb_total;
  Money vickrey_total;
  for (const auto& c : fixtures().india_table1) {
    const auto bids = circle_bids(c);
    const auto lic = circle_license(c);
    const auto fpsb = run_first_price_sealed(bids, lic, fixture_rng(c.name));
    const auto vickrey = run_vickrey_sealed(bids, lic, fixture_rng(c.name));
    const Money f = fpsb.sold() ? fpsb.payment_money() : Money{};
    const Money v = vickrey.sold() ? vickrey.payment_money() : Money{};
    fpsb_total += f;
    vickrey_total += v;

    std::string names;
    for (std::size_t i = 0; i < c.seconds.size(); ++i) names += (i ? ";" : "") + c.seconds[i].bidder;
    std::string note;
    switch (c.status) {
      case CircleStatus::bids:
        if (c.seconds.size() > 1) note = "tied second bids";
        break;
      case CircleStatus::no_second: note = "single bid: no second price, no reservation, pays 0"; break;
      case CircleStatus::no_bids: note = "no bids: unsold"; break;
    }
    Cell ratio = std::monostate{};
    if (!f.is_zero()) ratio = v.to_double() / f.to_double();
    r.add_row({c.name, std::string(to_string(c.group)), c.first ? Cell(c.first->bidder) : Cell(),
               c.first ? cell(c.first->bid) : Cell(), names.empty() ? Cell() : Cell(names),
               c.seconds.empty() ? Cell() : cell(c.seconds.front().bid), std::string(to_string(c.status)),
               winner_cell(fpsb), cell(f), cell(v), ratio, note.empty() ? Cell() : Cell(note)});
  }
  r.meta = {{"units", std::string("$m as printed")},
            {"circles", static_cast<std::int64_t>(fixtures().india_table1.size())},
            {"fpsb_total", cell(fpsb_total)},
            {"vickrey_total", cell(vickrey_total)}};
  return r;
}

Report nz_1990_report(Mechanism as) {
  if (as != Mechanism::fpsb && as != Mechanism::vickrey) {
    throw std::invalid_argument("nz-1990 can be replayed as fpsb or vickrey");
  }
  const auto& nz = fixtures().nz_1990;
  const LicenseId id("nz-1990");
  const License lic{id, "New Zealand 1990", LicenseGroup::none, std::nullopt};
  const std::vector<PriceBid> bids{{BidderId("bidder-1"), id, nz.winning_bid}, {BidderId("bidder-2"), id, nz.second_bid}};
  const auto out = as == Mechanism::fpsb ? run_first_price_sealed(bids, lic, fixture_rng("nz-1990"))
                                         : run_vickrey_sealed(bids, lic, fixture_rng("nz-1990"));
  properties::ScorecardContext ctx;
  ctx.v_g = nz.synthetic_v_g;
  ctx.v_g_synthetic = true;
  ctx.submitted_bids = bids.size();
  const auto card = properties::axiom_scorecard(out, ctx);

  Report r;
  r.kind = "fixture/nz-1990";
  r.meta = {{"mechanism", std::string(to_string(as))}, {"v_g", cell(nz.synthetic_v_g)}, {"v_g_synthetic", true}};
  r.columns = {"winner", "winning_bid", "payment", "visible_rent", "a2_revenue_ratio", "a5_rounds"};
  r.add_row({winner_cell(out), cell(out.winning_bid_money()), cell(out.payment_money()),
             cell(card.a4_visible_rent), cell(card.a2_revenue_ratio), static_cast<std::int64_t>(card.a5_rounds)});
  return r;
}

Report australia_1999_report(Mechanism as) {
  const auto& au = fixtures().australia_1999;
  const LicenseId id("australia-1999");
  const License lic{id, "Australia 1999", LicenseGroup::none, au.reservation};
  const BidderId bidder("sole-bidder");
  AuctionOutcome out;
  switch (as) {
    case Mechanism::samr: {
      const std::vector<SamrAgent> agents{{bidder, {{id, au.bidder_value}}}};
      const std::vector<License> licenses{lic};
      SamrConfig config;
      out = run_samr(agents, licenses, config, fixture_rng("australia-1999")).outcomes.front();
      break;
    }
    case Mechanism::fpsb:
    case Mechanism::vickrey: {
      const std::vector<PriceBid> bids{{bidder, id, au.bidder_value}};
      out = as == Mechanism::fpsb ? run_first_price_sealed(bids, lic, fixture_rng("australia-1999"))
                                  : run_vickrey_sealed(bids, lic, fixture_rng("australia-1999"));
      break;
    }
    default:
      throw std::invalid_argument("australia-1999 can be replayed as samr, fpsb or vickrey");
  }
  Report r;
  r.kind = "fixture/australia-1999";
  r.meta = {{"mechanism", std::string(to_string(as))}, {"reservation", cell(au.reservation)}};
  r.columns = {"winner", "payment", "rounds_used"};
  r.add_row({winner_cell(out), out.sold() ? cell(out.payment_money()) : Cell(),
             static_cast<std::int64_t>(out.rounds_used)});
  return r;
}

}  // namespace auctionlab::cli
