#include "auctionlab/cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace auctionlab::cli {

namespace {

nlohmann::ordered_json json_value(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          // Round through the printed form so JSON and CSV agree exactly.
          const std::string text = format_double(v);
          if (text.empty()) return nullptr;
          return std::strtod(text.c_str(), nullptr);
        } else {
          return v;
        }
      },
      c);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace

Cell cell(Money m) { return m.to_string(); }
Cell cell(Share s) { return s.to_string(); }
Cell cell(std::optional<double> x) {
  if (!x || !std::isfinite(*x)) return std::monostate{};
  return *x;
}
Cell cell(const std::optional<Money>& m) {
  if (!m) return std::monostate{};
  return m->to_string();
}

void Report::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::invalid_argument("report row has " + std::to_string(row.size()) + " cells, expected " +
                                std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

std::optional<Format> parse_format(std::string_view text) {
  if (text == "json") return Format::json;
  if (text == "csv") return Format::csv;
  return std::nullopt;
}

std::string format_double(double x) {
  if (!std::isfinite(x)) return {};
  if (x == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string csv_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return {};
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else {
          return v;
        }
      },
      c);
}

nlohmann::ordered_json to_json(const Report& report) {
  nlohmann::ordered_json j;
  j["report"] = report.kind;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.meta) meta[k] = json_value(v);
  j["meta"] = std::move(meta);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[report.columns[i]] = json_value(row[i]);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j;
}

std::string emit_json(const Report& report) { return to_json(report).dump(2) + "\n"; }

std::string emit_csv(const Report& report) {
  std::string out = "# report," + csv_escape(report.kind) + "\n";
  for (const auto& [k, v] : report.meta) out += "# " + csv_escape(k) + "," + csv_escape(csv_text(v)) + "\n";
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(report.columns[i]);
  }
  out += '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(csv_text(row[i]));
    }
    out += '\n';
  }
  return out;
}

std::string emit(const Report& report, Format format) {
  return format == Format::json ? emit_json(report) : emit_csv(report);
}

}  // namespace auctionlab::cli
