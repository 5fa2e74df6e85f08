// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "bcrelay/model.hpp"

// Relay-fading thresholds for two-layer simplex relaying.
//
// With S = nu_s P_s, L = nu_r P_r and the relay forwarding for the final
// (1 - X) of the block, layer 1 is decodable iff nu_r >= F (or K when the
// relay uses its own split beta) and layer 2 iff nu_r >= U. All functions
// take the source fading level v = nu_s.

namespace bcrelay {

/// Which relay split the layer-1 threshold assumes.
enum class BoundFamily {
  equal,   ///< beta = alpha: F, discontinuity where t = 1 / alpha_bar
  unequal, ///< beta >= alpha: K, discontinuity where t = 1 / beta_bar
};

struct BoundContext {
  TwoLayerAllocation alloc;
  PowerConfig cfg;
  double x = 0.0; ///< fraction of the block before the relay starts forwarding
  double r1 = 0.0;
  double r2 = 0.0;

  /// Context with X = eps2 of the relay decoding times and rates from the plan.
  static BoundContext make(const TwoLayerAllocation& alloc, const PowerConfig& cfg);
  /// Context at an explicit X (used for sensitivity checks). Throws unless 0 <= x < 1.
  static BoundContext at_time(const TwoLayerAllocation& alloc, const PowerConfig& cfg, double x);

  /// alpha_bar for the equal family, beta_bar for the unequal one.
  double fraction(BoundFamily family) const noexcept;
};

/// log t(v); t solves the layer-1 condition for the relay's contribution:
///   log t = (R1 - X log((1 + S) / (1 + alpha_bar S))) / (1 - X).
double log_t_factor(double v, const BoundContext& ctx);
double t_factor(double v, const BoundContext& ctx);

/// Layer-1 threshold on nu_r. For the equal family
///   F = (-S - (1 - t) / (1 - t alpha_bar)) / P_r,
/// and for the unequal one
///   K = (-S (1 - t alpha_bar) / (1 - t beta_bar) - (1 - t) / (1 - t beta_bar)) / P_r.
/// Throws std::domain_error where 1 - t * fraction <= 0 (below the
/// discontinuity point, where no relay fading suffices).
double relay_threshold_bound(double v, const BoundContext& ctx, BoundFamily family);

/// As relay_threshold_bound, but returns +inf below the discontinuity point.
double relay_threshold_or_inf(double v, const BoundContext& ctx, BoundFamily family);

/// Layer-2 threshold on nu_r given layer 1 is cancelled:
///   U = Z [(Z e^{-R2})^{1/(X-1)} - 1] / (fraction P_r),  Z = 1 + v alpha_bar P_s.
/// fraction = 0 (relay sends nothing of layer 2) gives +inf below eta2.
double u_bound(double v, const BoundContext& ctx, double denom_fraction);
double u_bound(double v, const BoundContext& ctx, BoundFamily family);

/// Source fading below which layer 1 needs unbounded relay fading: the v with
/// t(v) * fraction = 1, or 0 when e^{R1/(1-X)} * fraction <= 1. Bisection.
double discontinuity_point(const BoundContext& ctx, BoundFamily family);

/// Closed form of the same point:
///   chi = exp((R1 + (1 - X) log fraction) / X),  v = (chi - 1) / (P_s (1 - alpha_bar chi)).
double discontinuity_point_closed_form(const BoundContext& ctx, BoundFamily family);

/// Partition of [v_lo, eta1] by the crossings of the layer-1 threshold with U.
struct IntervalPartition {
  enum class Leading { threshold, u };

  std::vector<double> crossings;
  double v_lo = 0.0;
  double upper = 0.0;
  /// Which bound is larger on the first sub-interval.
  Leading leading = Leading::u;

  struct Piece {
    double a;
    double b;
    Leading dominant;
  };
  /// Sub-intervals [v_lo, c_1], [c_1, c_2], ..., [c_n, upper] with alternating dominance.
  std::vector<Piece> pieces() const;
};

/// Scan sign(threshold - U) on `scan_points` points of [v_lo, eta1] and refine
/// each change by bisection. If the crossing-count parity contradicts the
/// endpoint signs the scan is repeated at ten times the density, then throws
/// std::runtime_error.
IntervalPartition find_intersections(const BoundContext& ctx, BoundFamily family,
                                     std::size_t scan_points = 10'000);

} // namespace bcrelay
