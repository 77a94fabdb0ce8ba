#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "auctionlab/core/money.hpp"
#include "auctionlab/core/share.hpp"

namespace auctionlab::cli {

// A report cell. Money and Share are stored as their decimal strings.
using Cell = std::variant<std::monostate, bool, std::int64_t, double, std::string>;

Cell cell(Money m);
Cell cell(Share s);
Cell cell(std::optional<double> x);
Cell cell(const std::optional<Money>& m);

// A flat table plus key/value metadata. Both emitters walk the same cells,
// so JSON and CSV carry identical values.
struct Report {
  std::string kind;
  std::vector<std::pair<std::string, Cell>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  // Throws std::invalid_argument when the row width differs from columns.
  void add_row(std::vector<Cell> row);
};

enum class Format { json, csv };

std::optional<Format> parse_format(std::string_view text);

// Six significant digits; empty for non-finite values.
std::string format_double(double x);

nlohmann::ordered_json to_json(const Report& report);
std::string emit_json(const Report& report);
// Metadata lines start with '#'; then a header row and one line per row.
std::string emit_csv(const Report& report);
std::string emit(const Report& report, Format format);

// Textual form of a cell as written to CSV.
std::string csv_text(const Cell& c);

}  // namespace auctionlab::cli
