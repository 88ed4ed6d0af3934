#pragma once

// Column-oriented result tables written as CSV or JSON.

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace susypt::cli {

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// 17 significant digits, always with a decimal point or exponent so the
/// value reads back as floating point; -0 prints as 0.0.
std::string format_number(double v);

/// Header row plus one line per row, LF endings.
void write_csv(std::ostream& os, const Table& t);

/// {"meta": ..., "columns": [...], "rows": [[...], ...]}; NaN becomes null.
void write_json(std::ostream& os, const Table& t, const nlohmann::json& meta);

}  // namespace susypt::cli
