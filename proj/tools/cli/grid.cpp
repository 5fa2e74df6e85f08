// SPDX-License-Identifier: Apache-2.0
#include "grid.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "table.hpp"

namespace bcrelay::cli {

namespace {

double parse_number(const std::string& s, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) {
    throw std::invalid_argument("invalid grid '" + text + "': bad number '" + s + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    parts.push_back(cur);
  }
  if (!s.empty() && s.back() == sep) {
    parts.emplace_back();
  }
  return parts;
}

constexpr std::size_t kMaxPoints = 100000;

} // namespace

std::vector<double> parse_grid(const std::string& text) {
  if (text.empty()) {
    throw std::invalid_argument("invalid grid: empty");
  }
  std::vector<double> grid;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) {
      throw std::invalid_argument("invalid grid '" + text + "': expected start:stop:step");
    }
    const double lo = parse_number(parts[0], text);
    const double hi = parse_number(parts[1], text);
    const double step = parse_number(parts[2], text);
    if (!(step > 0.0) || hi < lo) {
      throw std::invalid_argument("invalid grid '" + text + "': need step > 0 and stop >= start");
    }
    const double count = std::floor((hi - lo) / step + 1e-6);
    if (count >= static_cast<double>(kMaxPoints)) {
      throw std::invalid_argument("invalid grid '" + text + "': too many points");
    }
    for (std::size_t i = 0; i <= static_cast<std::size_t>(count); ++i) {
      grid.push_back(lo + static_cast<double>(i) * step); // no accumulated drift
    }
  } else {
    for (const auto& p : split(text, ',')) {
      grid.push_back(parse_number(p, text));
    }
    if (grid.size() > kMaxPoints) {
      throw std::invalid_argument("invalid grid '" + text + "': too many points");
    }
  }
  return grid;
}

std::string grid_text(const std::vector<double>& grid) {
  std::string s;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    s += (i ? "," : "") + format_cell(grid[i]);
  }
  return s;
}

} // namespace bcrelay::cli
