#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rasec/errors.hpp"

namespace rasec {

/// Numeric table with '#'-prefixed comment lines; rows are fixed width and finite.
struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_comment(std::string_view text) {
    // Multi-line text becomes one comment line per input line.
    std::size_t pos = 0;
    while (pos < text.size()) {
      const auto nl = text.find('\n', pos);
      comments.emplace_back(text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos));
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
  }

  void add_row(std::vector<double> row) {
    if (row.size() != columns.size()) throw Error("csv row width does not match the header");
    for (double v : row)
      if (!std::isfinite(v)) throw Error("csv row contains a non-finite value");
    rows.push_back(std::move(row));
  }

  std::size_t column(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return i;
    throw Error("no csv column named '" + std::string(name) + "'");
  }
};

/// 12 significant digits in scientific notation.
inline std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

inline void write_csv(std::ostream& out, const CsvTable& t) {
  for (const auto& c : t.comments) out << "# " << c << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_value(row[i]);
    out << "\n";
  }
}

inline std::string to_csv(const CsvTable& t) {
  std::ostringstream o;
  write_csv(o, t);
  return o.str();
}

}  // namespace rasec
