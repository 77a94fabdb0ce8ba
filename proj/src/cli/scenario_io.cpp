#include "auctionlab/cli/scenario_io.hpp"

#include <fstream>
#include <initializer_list>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "auctionlab/mechanisms/outcome.hpp"

namespace auctionlab::cli {

namespace {

using nlohmann::json;
using montecarlo::Scenario;

// Walks the document and records every problem instead of stopping at the
// first one.
class Reader {
 public:
  std::vector<std::string> errors;

  void fail(const std::string& path, const std::string& msg) { errors.push_back(path + ": " + msg); }

  bool object(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) {
      fail(path, "must be an object");
      return false;
    }
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : j.items()) {
      if (!ok.contains(key)) fail(join(path, key), "unknown key");
    }
    return true;
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

  std::optional<std::string> string(const json& j, const std::string& path) {
    if (!j.is_string()) {
      fail(path, "must be a string");
      return std::nullopt;
    }
    return j.get<std::string>();
  }

  std::optional<double> number(const json& j, const std::string& path) {
    if (!j.is_number()) {
      fail(path, "must be a number");
      return std::nullopt;
    }
    return j.get<double>();
  }

  std::optional<std::uint64_t> count(const json& j, const std::string& path) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer()) {
      const auto v = j.get<std::int64_t>();
      if (v >= 0) return static_cast<std::uint64_t>(v);
      fail(path, "must be >= 0");
      return std::nullopt;
    }
    fail(path, "must be a non-negative integer");
    return std::nullopt;
  }

  // Money is written as a decimal string ("12.50") or a plain number.
  std::optional<Money> money(const json& j, const std::string& path) {
    try {
      if (j.is_string()) return Money::parse(j.get<std::string>());
      if (j.is_number_integer()) {
        const auto v = j.get<std::int64_t>();
        if (v < 0) throw std::domain_error("must be >= 0");
        return Money::from_units(v);
      }
      if (j.is_number()) return Money::from_double(j.get<double>());
      fail(path, "must be a decimal string or number");
    } catch (const std::exception& e) {
      fail(path, e.what());
    }
    return std::nullopt;
  }

  std::optional<Share> share(const json& j, const std::string& path) {
    try {
      if (j.is_string()) return Share::parse(j.get<std::string>());
      if (j.is_number()) return Share::from_double(j.get<double>());
      fail(path, "must be a decimal string or number");
    } catch (const std::exception& e) {
      fail(path, e.what());
    }
    return std::nullopt;
  }

  std::optional<ValueDistribution> distribution(const json& j, const std::string& path) {
    if (!object(j, path, {"point", "uniform", "normal"})) return std::nullopt;
    if (j.size() != 1) {
      fail(path, "must have exactly one of point, uniform, normal");
      return std::nullopt;
    }
    const auto it = j.begin();
    const std::string key = it.key();
    const json& v = it.value();
    const std::string p = join(path, key);
    if (key == "point") {
      if (auto x = number(v, p)) return ValueDistribution::point(*x);
      return std::nullopt;
    }
    if (!v.is_array() || v.size() != 2) {
      fail(p, "must be a two-element array");
      return std::nullopt;
    }
    auto a = number(v[0], p + "[0]");
    auto b = number(v[1], p + "[1]");
    if (!a || !b) return std::nullopt;
    return key == "uniform" ? ValueDistribution::uniform(*a, *b) : ValueDistribution::normal(*a, *b);
  }

  std::optional<ValueModel> value_model(const json& j, const std::string& path) {
    if (!object(j, path, {"point", "uniform", "normal", "common_signal"})) return std::nullopt;
    if (j.size() != 1) {
      fail(path, "must have exactly one of point, uniform, normal, common_signal");
      return std::nullopt;
    }
    const auto it = j.begin();
    const std::string key = it.key();
    const json& v = it.value();
    if (key == "point") {
      if (auto m = money(v, join(path, key))) return PointValue{*m};
      return std::nullopt;
    }
    if (key == "common_signal") {
      const std::string p = join(path, key);
      if (!object(v, p, {"noise_sd"})) return std::nullopt;
      if (!v.contains("noise_sd")) {
        fail(p, "noise_sd is required");
        return std::nullopt;
      }
      if (auto sd = number(v["noise_sd"], join(p, "noise_sd"))) return CommonValueSignal{*sd};
      return std::nullopt;
    }
    if (auto d = distribution(j, path)) return DistributedValue{*d};
    return std::nullopt;
  }

  std::optional<Strategy> strategy(const json& j, const std::string& path) {
    Strategy s;
    std::string kind;
    if (j.is_string()) {
      kind = j.get<std::string>();
    } else {
      if (!object(j, path, {"kind", "shading"})) return std::nullopt;
      if (!j.contains("kind")) {
        fail(path, "kind is required");
        return std::nullopt;
      }
      auto k = string(j["kind"], join(path, "kind"));
      if (!k) return std::nullopt;
      kind = *k;
      if (j.contains("shading")) {
        if (auto x = number(j["shading"], join(path, "shading"))) s.shading = *x;
      }
    }
    auto parsed = parse_strategy_kind(kind);
    if (!parsed) {
      fail(path, "unknown strategy '" + kind + "'");
      return std::nullopt;
    }
    s.kind = *parsed;
    return s;
  }

  std::optional<ScoredAttributes> attributes(const json& j, const std::string& path) {
    if (!object(j, path, {"rollout_speed", "rural_coverage", "indigenous_content"})) return std::nullopt;
    ScoredAttributes a;
    auto field = [&](const char* key, double& dst) {
      if (!j.contains(key)) return;
      if (auto x = number(j[key], join(path, key))) dst = *x;
    };
    field("rollout_speed", a.rollout_speed);
    field("rural_coverage", a.rural_coverage);
    field("indigenous_content", a.indigenous_content);
    return a;
  }

  void license(const json& j, const std::string& path, Scenario& s) {
    if (!object(j, path, {"id", "label", "group", "reservation"})) return;
    License l;
    if (!j.contains("id")) {
      fail(path, "id is required");
    } else if (auto id = string(j["id"], join(path, "id"))) {
      l.id = LicenseId(*id);
    }
    if (j.contains("label")) {
      if (auto v = string(j["label"], join(path, "label"))) l.label = *v;
    }
    if (j.contains("group")) {
      if (auto g = string(j["group"], join(path, "group"))) {
        try {
          l.group = parse_license_group(*g);
        } catch (const std::exception& e) {
          fail(join(path, "group"), e.what());
        }
      }
    }
    if (j.contains("reservation")) l.reservation = money(j["reservation"], join(path, "reservation"));
    s.licenses.push_back(std::move(l));
  }

  void bidder(const json& j, const std::string& path, Scenario& s) {
    if (!object(j, path,
                {"id", "value", "strategy", "strategy_by_mechanism", "budget", "risk_coefficient", "attributes"})) {
      return;
    }
    BidderProfile b;
    if (!j.contains("id")) {
      fail(path, "id is required");
    } else if (auto id = string(j["id"], join(path, "id"))) {
      b.id = BidderId(*id);
    }
    if (!j.contains("value")) {
      fail(path, "value is required");
    } else if (auto v = value_model(j["value"], join(path, "value"))) {
      b.value_model = *v;
    }
    if (j.contains("strategy")) {
      if (auto st = strategy(j["strategy"], join(path, "strategy"))) b.strategy = *st;
    }
    std::map<Mechanism, Strategy> overrides;
    if (j.contains("strategy_by_mechanism")) {
      const std::string p = join(path, "strategy_by_mechanism");
      const auto& m = j["strategy_by_mechanism"];
      if (!m.is_object()) {
        fail(p, "must be an object keyed by mechanism");
      } else {
        for (auto it = m.begin(); it != m.end(); ++it) {
          const auto mech = parse_mechanism(it.key());
          if (!mech) {
            fail(join(p, it.key()), "unknown mechanism");
            continue;
          }
          if (auto st = strategy(it.value(), join(p, it.key()))) overrides[*mech] = *st;
        }
      }
    }
    s.strategy_by_mechanism.push_back(std::move(overrides));
    if (j.contains("budget")) b.budget = money(j["budget"], join(path, "budget"));
    if (j.contains("risk_coefficient")) {
      if (auto x = number(j["risk_coefficient"], join(path, "risk_coefficient"))) b.risk_coefficient = *x;
    }
    if (j.contains("attributes")) b.attributes = attributes(j["attributes"], join(path, "attributes"));
    s.bidders.push_back(std::move(b));
  }

  void samr(const json& j, const std::string& path, Scenario& s) {
    if (!object(j, path, {"increment", "activity", "max_rounds", "opening_bid"})) return;
    SamrConfig c;
    if (j.contains("increment")) {
      const auto& inc = j["increment"];
      const std::string p = join(path, "increment");
      if (inc.is_object()) {
        if (object(inc, p, {"fraction"}) && inc.contains("fraction")) {
          if (auto f = number(inc["fraction"], join(p, "fraction"))) c.increment = SamrIncrement::proportional(*f);
        } else {
          fail(p, "fraction is required");
        }
      } else if (auto m = money(inc, p)) {
        c.increment = SamrIncrement::fixed(*m);
      }
    }
    if (j.contains("activity")) {
      if (auto a = string(j["activity"], join(path, "activity"))) {
        if (*a == "none") {
          c.activity = ActivityRule::none;
        } else if (*a == "must_act_each_round") {
          c.activity = ActivityRule::must_act_each_round;
        } else {
          fail(join(path, "activity"), "must be none or must_act_each_round");
        }
      }
    }
    if (j.contains("max_rounds")) {
      if (auto n = count(j["max_rounds"], join(path, "max_rounds"))) {
        if (*n > UINT32_MAX) {
          fail(join(path, "max_rounds"), "too large");
        } else {
          c.max_rounds = static_cast<std::uint32_t>(*n);
        }
      }
    }
    if (j.contains("opening_bid")) {
      if (auto m = money(j["opening_bid"], join(path, "opening_bid"))) c.opening_bid = *m;
    }
    s.samr = c;
  }

  void weights(const json& j, const std::string& path, Scenario& s) {
    if (!object(j, path, {"fee", "rollout_speed", "rural_coverage", "indigenous_content"})) return;
    ScoreWeights w;
    auto field = [&](const char* key, double& dst) {
      if (!j.contains(key)) return;
      if (auto x = number(j[key], join(path, key))) dst = *x;
    };
    field("fee", w.fee);
    field("rollout_speed", w.rollout_speed);
    field("rural_coverage", w.rural_coverage);
    field("indigenous_content", w.indigenous_content);
    s.weights = w;
  }

  // revenues: either an explicit array of amounts or {"flat": amount, "periods": n}.
  std::vector<Money> revenues(const json& j, const std::string& path) {
    std::vector<Money> out;
    if (j.is_array()) {
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (auto m = money(j[i], path + "[" + std::to_string(i) + "]")) out.push_back(*m);
      }
      return out;
    }
    if (!object(j, path, {"flat", "periods"})) return out;
    if (!j.contains("flat") || !j.contains("periods")) {
      fail(path, "flat and periods are both required");
      return out;
    }
    auto amount = money(j["flat"], join(path, "flat"));
    auto n = count(j["periods"], join(path, "periods"));
    if (amount && n) {
      if (*n > 100000) {
        fail(join(path, "periods"), "must be <= 100000");
      } else {
        out.assign(*n, *amount);
      }
    }
    return out;
  }

  void share(const json& j, const std::string& path, Scenario& s) {
    if (!object(j, path, {"v_g", "revenues", "rate"})) return;
    montecarlo::ShareSetup setup;
    if (!j.contains("v_g")) {
      fail(path, "v_g is required");
    } else if (auto m = money(j["v_g"], join(path, "v_g"))) {
      setup.v_g = *m;
    }
    if (!j.contains("revenues")) {
      fail(path, "revenues is required");
    } else {
      setup.revenues = revenues(j["revenues"], join(path, "revenues"));
    }
    if (j.contains("rate")) {
      if (auto r = number(j["rate"], join(path, "rate"))) setup.rate = *r;
    }
    s.share = std::move(setup);
  }

  void config(const json& j, const std::string& path, Scenario& s) {
    if (!object(j, path, {"samr", "weights", "share", "common_value"})) return;
    if (j.contains("samr")) samr(j["samr"], join(path, "samr"), s);
    if (j.contains("weights")) weights(j["weights"], join(path, "weights"), s);
    if (j.contains("share")) share(j["share"], join(path, "share"), s);
    if (j.contains("common_value")) s.common_value = distribution(j["common_value"], join(path, "common_value"));
  }

  void metrics(const json& j, const std::string& path, Scenario& s) {
    if (!object(j, path, {"v_g", "rollout_cost", "upfront_fee"})) return;
    if (j.contains("v_g")) s.metrics.v_g = money(j["v_g"], join(path, "v_g"));
    if (j.contains("rollout_cost")) s.metrics.rollout_cost = money(j["rollout_cost"], join(path, "rollout_cost"));
    if (j.contains("upfront_fee")) s.metrics.upfront_fee = money(j["upfront_fee"], join(path, "upfront_fee"));
  }
};

}  // namespace

Scenario parse_scenario_json(const json& doc) {
  Reader r;
  Scenario s;
  if (!r.object(doc, "scenario", {"version", "mechanism", "licenses", "bidders", "config", "trials", "seed", "metrics"})) {
    throw montecarlo::ValidationError(r.errors);
  }
  if (!doc.contains("version")) {
    r.fail("version", "is required");
  } else if (auto v = r.count(doc["version"], "version"); v && *v != kScenarioVersion) {
    r.fail("version", "unsupported version " + std::to_string(*v) + " (expected " +
                          std::to_string(kScenarioVersion) + ")");
  }
  if (!doc.contains("mechanism")) {
    r.fail("mechanism", "is required");
  } else if (auto m = r.string(doc["mechanism"], "mechanism")) {
    if (auto mech = parse_mechanism(*m)) {
      s.mechanism = *mech;
    } else {
      r.fail("mechanism", "unknown mechanism '" + *m + "'");
    }
  }
  if (doc.contains("licenses")) {
    if (!doc["licenses"].is_array()) {
      r.fail("licenses", "must be an array");
    } else {
      for (std::size_t i = 0; i < doc["licenses"].size(); ++i) {
        r.license(doc["licenses"][i], "licenses[" + std::to_string(i) + "]", s);
      }
    }
  }
  if (doc.contains("bidders")) {
    if (!doc["bidders"].is_array()) {
      r.fail("bidders", "must be an array");
    } else {
      for (std::size_t i = 0; i < doc["bidders"].size(); ++i) {
        r.bidder(doc["bidders"][i], "bidders[" + std::to_string(i) + "]", s);
      }
    }
  }
  if (doc.contains("config")) r.config(doc["config"], "config", s);
  if (doc.contains("trials")) {
    if (auto t = r.count(doc["trials"], "trials")) s.trials = *t;
  }
  if (doc.contains("seed")) {
    if (doc["seed"].is_number_unsigned()) {
      s.master_seed = doc["seed"].get<std::uint64_t>();
    } else {
      r.fail("seed", "must be a non-negative integer");
    }
  }
  if (doc.contains("metrics")) r.metrics(doc["metrics"], "metrics", s);

  auto errors = std::move(r.errors);
  for (auto& v : s.violations()) errors.push_back(std::move(v));
  if (!errors.empty()) throw montecarlo::ValidationError(std::move(errors));
  return s;
}

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw montecarlo::ValidationError({std::string("scenario: not valid JSON: ") + e.what()});
  }
  return parse_scenario_json(doc);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace auctionlab::cli
