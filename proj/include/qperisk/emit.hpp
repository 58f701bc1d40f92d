#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "qperisk/errors.hpp"

namespace qperisk {

using Cell = std::variant<std::int64_t, double, std::string>;

/// A tidy result table: fixed column order, one row per result.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw ArgumentError("table row does not match the column count");
    rows.push_back(std::move(row));
  }
};

enum class OutputFormat { csv, json };

/// 17 significant digits, enough for an exact double round trip.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline std::string csv_field(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

inline std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (unsigned char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (ch < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += static_cast<char>(ch);
        }
    }
  }
  return out + "\"";
}

inline std::string json_value(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? format_double(*d) : "null";
  return json_string(std::get<std::string>(c));
}

}  // namespace detail

inline void write_csv(const Table& t, std::ostream& out) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << detail::csv_field(row[i]);
    out << '\n';
  }
}

/// {"columns": [...], "rows": [{...}, ...]} with the same fields and order as the CSV.
inline void write_json(const Table& t, std::ostream& out) {
  out << "{\"columns\":[";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << detail::json_string(t.columns[i]);
  out << "],\"rows\":[";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out << (r ? ",\n" : "\n") << '{';
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      out << (i ? "," : "") << detail::json_string(t.columns[i]) << ':' << detail::json_value(t.rows[r][i]);
    }
    out << '}';
  }
  out << "\n]}\n";
}

inline std::string render(const Table& t, OutputFormat format) {
  std::ostringstream os;
  if (format == OutputFormat::csv) {
    write_csv(t, os);
  } else {
    write_json(t, os);
  }
  return os.str();
}

/// Writes a non-empty table to `path`, or to `fallback` when the path is empty.
/// Nothing is created when the table is empty.
inline void emit(const Table& t, OutputFormat format, const std::string& path, std::ostream& fallback) {
  if (t.rows.empty()) throw ArgumentError("no results to write");
  const std::string text = render(t, format);
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open output file '" + path + "'");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing output file '" + path + "'");
}

}  // namespace qperisk
