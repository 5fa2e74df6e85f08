// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>

namespace bcrelay::numerics {

using Function = std::function<double(double)>;

struct QuadratureOptions {
  double abs_tol = 1e-9;
  std::size_t max_evaluations = 1'000'000;
  int initial_panels = 4;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature on [a, b].
///
/// The panel with the largest |K15 - G7| is bisected until the summed error
/// estimate drops below `abs_tol` or the evaluation budget is spent.
QuadratureResult integrate(const Function& f, double a, double b,
                           const QuadratureOptions& opts = {});

/// Integral over [a, inf) through the map u = a + x / (1 - x).
QuadratureResult integrate_to_infinity(const Function& f, double a,
                                       const QuadratureOptions& opts = {});

/// Raised when a bracketing method is handed an interval without a sign change.
class NoBracketError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Root of f in [lo, hi] by TOMS 748. Requires f(lo) and f(hi) of opposite
/// sign (or one of them zero). Iterates until the bracket is narrower than
/// `x_tol` or at machine resolution.
double find_root(const Function& f, double lo, double hi, double x_tol = 0.0);

/// Plain bisection; the reference used where robustness matters more than speed.
double bisect(const Function& f, double lo, double hi, double x_tol = 0.0);

/// First sub-interval of a grid on [lo, hi] across which f changes sign.
/// With `geometric` the grid is log-spaced (lo must be > 0).
std::optional<std::pair<double, double>> scan_for_bracket(const Function& f, double lo,
                                                          double hi, int points,
                                                          bool geometric = false);

struct Extremum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for the maximum of a unimodal f on [lo, hi].
Extremum golden_section_maximize(const Function& f, double lo, double hi,
                                 double x_tol = 1e-6);

} // namespace bcrelay::numerics
