// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "bcrelay/model.hpp"

namespace bcrelay {

/// Distribution of an equivalent fading gain s >= 0.
///
/// `survival` is carried alongside `cdf` so that tails are evaluated without
/// the cancellation in 1 - F(s). `pdf_derivative` is optional; when present
/// the layering density is differentiated analytically.
struct FadingDistribution {
  std::function<double(double)> cdf;
  std::function<double(double)> survival;
  std::function<double(double)> pdf;
  std::function<double(double)> pdf_derivative;
  std::string label;
};

/// SISO Rayleigh fading: s = nu_s ~ Exp(1).
FadingDistribution rayleigh_fading();

/// s = nu_s + a nu_r with independent unit-mean exponentials (a = P_r / P_s).
/// |a - 1| < 1e-6 uses the a = 1 (Gamma(2,1)) form. Throws for a <= 0.
FadingDistribution sum_fading_distribution(double a);

/// Residual interference I(u) of a continuous layering and its density
/// rho(u) = -dI/du. I(u) = total_power below u0 and 0 above u1.
struct PowerDensity {
  std::function<double(double)> residual;
  std::function<double(double)> density;
  double u0 = 0.0;
  double u1 = 0.0;
  double total_power = 0.0;
  bool analytic_density = false;
  /// Set when a boundary hit the search bracket [1e-8, 1e4].
  bool u0_at_bracket_edge = false;
  bool u1_at_bracket_edge = false;
};

/// Raised when the optimal-layering boundary conditions cannot be bracketed.
class UnsupportedDistribution : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Unclipped optimal residual (1 - F(u) - u f(u)) / (u^2 f(u)).
double unclipped_optimal_residual(const FadingDistribution& dist, double u);

/// Optimal broadcast layering for a single-antenna link with the given fading.
PowerDensity optimal_power_density(double total_power, const FadingDistribution& dist);

/// Layering with no power density (all power in a single residual). Rate 0.
PowerDensity flat_power_density(double total_power);

/// Expected decoded rate: int_{u0}^{u1} (1 - F(u)) u rho(u) / (1 + u I(u)) du.
double broadcast_rate(const PowerDensity& density, const FadingDistribution& dist);

enum class BroadcastBound { relay, miso };

/// Continuous-broadcasting lower bounds with the relay layering scaled as
/// I_r(s) = (P_r / P_s) I_s(s), so that the destination sees the equivalent
/// gain s = nu_s + (P_r / P_s) nu_r against the source layering I_s.
///
///  - relay: the source keeps its SISO-optimal layering (it is oblivious).
///  - miso:  the source layering is optimised for the distribution of s.
///
/// The relay is assumed to hold the message from the start of the block.
double relay_or_miso_broadcast_bound(const PowerConfig& cfg, BroadcastBound mode);

} // namespace bcrelay
