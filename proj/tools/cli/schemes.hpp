// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <bcrelay/model.hpp>
#include <bcrelay/monte_carlo.hpp>
#include <bcrelay/optimizer.hpp>

namespace bcrelay::cli {

enum class Scheme {
  single_layer,      // SISO outage
  single_layer_sdf,  // one layer with an SDF relay
  single_layer_miso, // one layer, relay decodes instantly
  direct,
  miso_equal,
  miso_unequal,
  simplex_equal,
  simplex_unequal,
  full_duplex,       // Monte-Carlo only
  continuous_siso,
  broadcast_relay,
  broadcast_miso,
  ergodic_miso,
};

std::string_view to_string(Scheme s) noexcept;
Scheme scheme_from_string(std::string_view name);
std::vector<std::string> scheme_names();

bool is_single_layer(Scheme s) noexcept;
bool is_two_layer(Scheme s) noexcept;
bool has_closed_form(Scheme s) noexcept;
bool is_unequal(Scheme s) noexcept;

/// How the layering is chosen at each point.
///   fixed     - exactly the given alpha/beta/eta (or rate)
///   oblivious - the source's direct-transmission optimum; unequal schemes
///               then optimise the relay split beta on top of it
///   optimized - every free parameter optimised for the scheme itself
enum class PlanMode { fixed, oblivious, optimized };
std::string_view to_string(PlanMode m) noexcept;
PlanMode plan_mode_from_string(std::string_view name);

struct PointInput {
  PowerConfig cfg;
  TwoLayerAllocation alloc;
  bool beta_given = false;
  double rate = 1.0; ///< single-layer rate, nats
};

struct Evaluation {
  Scheme scheme = Scheme::direct;
  TwoLayerAllocation alloc;
  double rate = std::numeric_limits<double>::quiet_NaN();
  ThroughputResult result; ///< r_av is NaN when there is no closed form
};

/// Maximises a single-layer throughput curve over the rate in [0, r_max].
double best_single_rate(const std::function<double(double)>& throughput, double r_max);

/// Resolves the plan for `mode` and evaluates the closed form. `oblivious`
/// may carry a precomputed source plan for cfg.p_s.
Evaluation evaluate_scheme(Scheme s, PlanMode mode, const PointInput& in,
                           const OptimizerOptions& opts,
                           const std::optional<TwoLayerAllocation>& oblivious = std::nullopt);

/// Closed form of an already resolved plan.
ThroughputResult closed_form(Scheme s, const TwoLayerAllocation& alloc, double rate,
                             const PowerConfig& cfg);

/// Simulation settings for an evaluated point, or nullopt when the scheme has
/// no simulator.
std::optional<SimConfig> simulation_for(const Evaluation& e, const PowerConfig& cfg);

} // namespace bcrelay::cli
