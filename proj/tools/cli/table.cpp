// SPDX-License-Identifier: Apache-2.0
#include "table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace bcrelay::cli {

std::string format_cell(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) {
    return *s;
  }
  if (const auto* i = std::get_if<std::int64_t>(&c)) {
    return std::to_string(*i);
  }
  const double v = std::get<double>(c);
  if (std::isnan(v)) {
    return "nan";
  }
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v); // no "-0"
  return buf;
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) {
    throw std::invalid_argument("table row has " + std::to_string(row.size()) +
                                " cells, header has " + std::to_string(columns_.size()));
  }
  rows_.push_back(std::move(row));
}

void Table::append(const Table& other) {
  if (other.columns_ != columns_) {
    throw std::invalid_argument("appending a table with a different header");
  }
  rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
}

void Table::write(std::ostream& os) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    os << (i ? "," : "") << columns_[i];
  }
  os << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << format_cell(row[i]);
    }
    os << '\n';
  }
}

std::filesystem::path OutputTarget::manifest_path() const {
  std::filesystem::path p(path);
  p.replace_extension(".manifest.json");
  return p;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  f << text;
  f.flush();
  if (!f) {
    throw std::runtime_error("write to '" + path.string() + "' failed");
  }
}

void emit(const Table& table, const OutputTarget& target, const nlohmann::json& manifest,
          std::ostream& out, std::ostream& err) {
  if (target.is_stdout()) {
    table.write(out);
    err << "manifest " << manifest.dump() << '\n';
    return;
  }
  std::ostringstream csv;
  table.write(csv);
  write_text_file(target.path, csv.str());
  nlohmann::json m = manifest;
  m["output"] = std::filesystem::path(target.path).filename().string();
  write_text_file(target.manifest_path(), m.dump(2) + "\n");
}

} // namespace bcrelay::cli
