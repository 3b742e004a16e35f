#pragma once

// Tabular output shared by every subcommand. A Table is a list of rows with a
// fixed column order, optionally followed by a summary record.

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace xyent::cli {

enum class Format { csv, json };

using Value = std::variant<double, long long, bool, std::string>;

struct Field {
  std::string key;
  Value value;
};

using Record = std::vector<Field>;

struct Table {
  std::string command;
  Record parameters;
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
  Record summary;

  void add_row(std::vector<Value> row) { rows.push_back(std::move(row)); }
};

struct OutputSpec {
  Format format = Format::csv;
  std::string path;  // empty: standard output
  int precision = 12;
};

/// Numbers go through "%.{precision}g" in both formats, so CSV and JSON
/// carry the same digits. Non-finite values are spelled nan, inf and -inf.
std::string format_number(double value, int precision);

void write_table(std::ostream& out, const Table& table, const OutputSpec& spec);

}  // namespace xyent::cli
