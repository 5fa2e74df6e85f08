// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "bcrelay/model.hpp"
#include "bcrelay/two_layer.hpp"

// Deterministic maximisation over the two-layer parameters: a full grid over
// the free coordinates followed by coordinate-wise golden-section refinement
// from the best few grid points. Only improvements are accepted, so the
// result is never worse than any probed point.

namespace bcrelay {

enum class Objective { direct, miso_equal, miso_unequal, simplex_equal, simplex_unequal };

std::string_view to_string(Objective o) noexcept;
Objective objective_from_string(std::string_view name);

/// Throughput of `alloc` under the objective's closed form.
double evaluate_objective(Objective o, const TwoLayerAllocation& alloc, const PowerConfig& cfg);

/// Bit flags naming the free coordinates.
enum Param : unsigned {
  kAlpha = 1u << 0,
  kBeta = 1u << 1,
  kEta1 = 1u << 2,
  kEta2 = 1u << 3,
};
using ParamSet = unsigned;

struct OptimizerOptions {
  std::size_t grid_points = 64; ///< per free coordinate
  std::size_t starts = 4;       ///< grid points refined
  double param_tol = 1e-6;      ///< final window in normalised coordinates
  double eta_max = 0.0;         ///< threshold box; 0 picks one from the powers
  unsigned workers = 1;         ///< grid evaluation threads; result independent of it
  /// Extra refinement starts besides the best grid points. Seeds outside the
  /// box are clamped onto it.
  std::vector<TwoLayerAllocation> seeds;
};

struct OptimizationResult {
  TwoLayerAllocation params;
  double value = 0.0;
  /// Best value after the grid and after every refinement pass (non-decreasing).
  std::vector<double> trace;
  std::size_t evaluations = 0;
  /// R1 > R2 at the returned plan (set by the Objective overloads, which know P_s).
  bool rate_ordering_holds = false;
};

/// Generic form. `beta_at_least_alpha` restricts the box to beta >= alpha.
/// Coordinates not in `free` are taken from `fixed`.
OptimizationResult maximize_throughput(const std::function<double(const TwoLayerAllocation&)>& f,
                                       ParamSet free, const TwoLayerAllocation& fixed,
                                       bool beta_at_least_alpha, double eta_max,
                                       const OptimizerOptions& opts = {});

/// Unequal-split objectives with beta free are also refined from the
/// equal-split optimum, so they never return less than beta = alpha does.
OptimizationResult maximize_throughput(Objective objective, ParamSet free,
                                       const TwoLayerAllocation& fixed, const PowerConfig& cfg,
                                       const OptimizerOptions& opts = {});

/// The source's relay-oblivious plan: maximises direct transmission. With one
/// layer the plan is alpha = 1, eta1 = eta2 = (e^{R*} - 1) / P_s.
OptimizationResult oblivious_rate_plan(double p_s, int n_layers, const OptimizerOptions& opts = {});

struct LayerPlanResult {
  LayerPlan plan;
  double value = 0.0;
  double continuous_start = 0.0; ///< value of the discretised continuous layering
  double two_layer_start = 0.0;  ///< value of the best two-layer plan
};

/// N-layer plan maximising sum_i R_i P(s >= eta_i), s = nu_s (p_r = 0) or
/// nu_s + (p_r / p_s) nu_r. Starts from the better of the discretised optimal
/// continuous layering and the optimal two-layer plan.
LayerPlanResult optimize_layer_plan(double p_s, double p_r, std::size_t n_layers,
                                    const OptimizerOptions& opts = {});

/// Horizontal distance in dB between two throughput-vs-power curves sampled
/// on the same increasing grid: the extra power `reference` needs to reach
/// the value `curve` attains at `at_db`. NaN when that value lies outside the
/// sampled range of `reference`.
double horizontal_gain_db(const std::vector<double>& x_db, const std::vector<double>& reference,
                          const std::vector<double>& curve, double at_db);

} // namespace bcrelay
