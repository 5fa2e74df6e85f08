// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace bcrelay::cli {

using Cell = std::variant<double, std::int64_t, std::string>;

/// Floats as %.12g; inf/nan spelled the way strtod reads them back.
std::string format_cell(const Cell& c);

/// Row-buffered CSV: header row, comma separated, '\n' line ends.
class Table {
public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  /// Throws std::invalid_argument when the width does not match the header.
  void add_row(std::vector<Cell> row);
  void append(const Table& other);

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }

  void write(std::ostream& os) const;

private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

/// Where a command's CSV goes. "-" (or empty) is stdout.
struct OutputTarget {
  std::string path = "-";
  bool is_stdout() const noexcept { return path.empty() || path == "-"; }
  std::filesystem::path manifest_path() const;
};

/// Writes the table and, for file targets, a JSON manifest next to it. For
/// stdout the manifest goes to `err` as a single line. Throws
/// std::runtime_error when a file cannot be written.
void emit(const Table& table, const OutputTarget& target, const nlohmann::json& manifest,
          std::ostream& out, std::ostream& err);

void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace bcrelay::cli
