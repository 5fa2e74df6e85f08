// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <bcrelay/optimizer.hpp>

#include "table.hpp"

// Figure presets. Every preset produces a long-format table
//   ps_db, q_db, pr_over_ps, scheme, throughput_<unit> [, std_error]
// one row per (grid point, curve). pr_over_ps is linear; q_db is "inf" for
// curves that do not involve the source-relay link.

namespace bcrelay::cli {

struct FigureGrid {
  std::vector<double> ps_db;
  std::vector<double> q_db;
  std::vector<double> pr_over_ps;
};

struct FigurePreset {
  std::string name;
  std::string summary;
  FigureGrid defaults;
  bool monte_carlo = false;
};

const std::vector<FigurePreset>& figure_presets();
/// Throws std::invalid_argument naming the known presets.
const FigurePreset& find_preset(const std::string& name);

struct FigureOptions {
  std::optional<std::vector<double>> ps_db;
  std::optional<std::vector<double>> q_db;
  std::optional<std::vector<double>> pr_over_ps;
  std::uint64_t blocks = 200'000; ///< Monte-Carlo presets only
  std::uint64_t seed = 0;
  unsigned workers = 1;
  bool bits = false;
  OptimizerOptions optimizer;
};

FigureGrid resolve_grid(const FigurePreset& preset, const FigureOptions& opts);

Table run_figure(const FigurePreset& preset, const FigureOptions& opts);

/// Minimal gnuplot script plotting the preset's CSV.
std::string plot_script(const FigurePreset& preset, const std::string& csv_name, bool bits);

} // namespace bcrelay::cli
