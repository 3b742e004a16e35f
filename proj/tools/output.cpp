#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include "json.hpp"
#endif

namespace xyent::cli {

namespace {

using nlohmann::ordered_json;

std::string to_text(const Value& v, int precision) {
  if (const auto* d = std::get_if<double>(&v)) return format_number(*d, precision);
  if (const auto* i = std::get_if<long long>(&v)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  return std::get<std::string>(v);
}

// Strings holding commas or quotes are quoted per RFC 4180.
std::string csv_cell(const Value& v, int precision) {
  std::string text = to_text(v, precision);
  if (!std::holds_alternative<std::string>(v) || text.find_first_of(",\"\n") == std::string::npos) {
    return text;
  }
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

ordered_json to_json(const Value& v, int precision) {
  if (const auto* d = std::get_if<double>(&v)) {
    if (!std::isfinite(*d)) return format_number(*d, precision);
    // Round through the printed digits so JSON matches CSV.
    return std::strtod(format_number(*d, precision).c_str(), nullptr);
  }
  if (const auto* i = std::get_if<long long>(&v)) return *i;
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  return std::get<std::string>(v);
}

ordered_json to_json(const Record& record, int precision) {
  ordered_json obj = ordered_json::object();
  for (const auto& f : record) obj[f.key] = to_json(f.value, precision);
  return obj;
}

void write_csv(std::ostream& out, const Table& t, int precision) {
  for (std::size_t c = 0; c < t.columns.size(); ++c) out << (c ? "," : "") << t.columns[c];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_cell(row[c], precision);
    out << '\n';
  }
  // Summaries follow the table as comment lines, readable with comment='#'.
  for (const auto& f : t.summary) out << "# " << f.key << '=' << to_text(f.value, precision) << '\n';
}

void write_json(std::ostream& out, const Table& t, int precision) {
  ordered_json doc;
  doc["command"] = t.command;
  doc["parameters"] = to_json(t.parameters, precision);
  doc["columns"] = t.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : t.rows) {
    ordered_json obj = ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) obj[t.columns[c]] = to_json(row[c], precision);
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  doc["summary"] = to_json(t.summary, precision);
  out << doc.dump(2) << '\n';
}

}  // namespace

std::string format_number(double value, int precision) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";  // drops the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, value);
  return buf;
}

void write_table(std::ostream& out, const Table& table, const OutputSpec& spec) {
  if (spec.format == Format::json) {
    write_json(out, table, spec.precision);
  } else {
    write_csv(out, table, spec.precision);
  }
}

}  // namespace xyent::cli
