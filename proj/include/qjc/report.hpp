#ifndef QJC_REPORT_HPP
#define QJC_REPORT_HPP

#include <cstdio>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace qjc {

/// One table cell; numbers are rendered with a fixed 17-significant-digit
/// format so reports are byte-deterministic for identical configs.
using Cell = std::variant<std::string, double, long long>;

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string cell_text(const Cell& c) {
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
  return std::to_string(std::get<long long>(c));
}

/// Flat report: config echo (insertion-ordered key/value pairs), column names,
/// data rows.
struct Report {
  std::string name;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_config(const std::string& k, const std::string& v) { config.emplace_back(k, v); }
  void add_row(std::vector<Cell> r) { rows.push_back(std::move(r)); }
};

namespace detail {

inline std::string csv_quote(const std::string& s) {
  bool need = s.find_first_of(",\"\n\r") != std::string::npos;
  if (!need) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

inline void json_cell(std::ostream& os, const Cell& c) {
  if (std::holds_alternative<std::string>(c))
    os << '"' << json_escape(std::get<std::string>(c)) << '"';
  else
    os << cell_text(c);
}

}  // namespace detail

/// CSV layout: '# key,value' config header lines, then the column row, then
/// data (RFC-4180-style quoting).
inline void write_csv(std::ostream& os, const Report& rep) {
  for (const auto& [k, v] : rep.config)
    os << "# " << detail::csv_quote(k) << "," << detail::csv_quote(v) << "\n";
  for (std::size_t i = 0; i < rep.columns.size(); ++i)
    os << (i ? "," : "") << detail::csv_quote(rep.columns[i]);
  os << "\n";
  for (const auto& row : rep.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << detail::csv_quote(cell_text(row[i]));
    os << "\n";
  }
}

/// JSON layout with stable (insertion) key order.
inline void write_json(std::ostream& os, const Report& rep) {
  os << "{\n  \"name\": \"" << detail::json_escape(rep.name) << "\",\n  \"config\": {";
  for (std::size_t i = 0; i < rep.config.size(); ++i) {
    os << (i ? ", " : "") << '"' << detail::json_escape(rep.config[i].first) << "\": \""
       << detail::json_escape(rep.config[i].second) << '"';
  }
  os << "},\n  \"columns\": [";
  for (std::size_t i = 0; i < rep.columns.size(); ++i)
    os << (i ? ", " : "") << '"' << detail::json_escape(rep.columns[i]) << '"';
  os << "],\n  \"rows\": [\n";
  for (std::size_t r = 0; r < rep.rows.size(); ++r) {
    os << "    [";
    for (std::size_t i = 0; i < rep.rows[r].size(); ++i) {
      if (i) os << ", ";
      detail::json_cell(os, rep.rows[r][i]);
    }
    os << "]" << (r + 1 < rep.rows.size() ? "," : "") << "\n";
  }
  os << "  ]\n}\n";
}

}  // namespace qjc

#endif  // QJC_REPORT_HPP
