#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ucp/cli/scenario.hpp"

namespace ucp::cli {

using Cell = std::variant<double, std::int64_t, std::string, bool>;

/// Fixed-column table. Doubles are written with 17 significant digits,
/// non-finite values as nan, inf or -inf.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  /// Throws Structural when the row width differs from the header.
  void add(std::vector<Cell> row);
  /// Stable sort on one integer or double column.
  void sort_by(const std::string& column);

  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

std::string format_double(double x);

/// Two-space indented JSON with 17 significant digits; non-finite numbers become null.
std::string dump_json(const Json& j);

/// Creates the directory and its parents. Throws Io on failure.
void ensure_directory(const std::string& dir);
/// Writes the whole file at once. Throws Io on failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace ucp::cli
