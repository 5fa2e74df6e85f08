// SPDX-License-Identifier: Apache-2.0
#include "bcrelay/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>

namespace bcrelay::numerics {

namespace {

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

// Kronrod abscissae (positive half, x=0 first) interleave the Gauss nodes:
// even indices are shared with the 7-point Gauss rule.
Panel gauss_kronrod_15(const Function& f, double a, double b) {
  using boost::math::quadrature::gauss;
  using boost::math::quadrature::gauss_kronrod;
  static const auto& x = gauss_kronrod<double, 15>::abscissa();
  static const auto& wk = gauss_kronrod<double, 15>::weights();
  static const auto& wg = gauss<double, 7>::weights();

  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f0 = f(mid);
  double kronrod = wk[0] * f0;
  double gauss_sum = wg[0] * f0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double fs = f(mid - half * x[i]) + f(mid + half * x[i]);
    kronrod += wk[i] * fs;
    if (i % 2 == 0) {
      gauss_sum += wg[i / 2] * fs;
    }
  }
  kronrod *= half;
  gauss_sum *= half;
  double err = std::abs(kronrod - gauss_sum);
  if (!std::isfinite(kronrod)) {
    err = std::numeric_limits<double>::infinity();
  }
  return {a, b, kronrod, err};
}

constexpr std::size_t kEvalsPerPanel = 15;

} // namespace

QuadratureResult integrate(const Function& f, double a, double b,
                           const QuadratureOptions& opts) {
  QuadratureResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }

  std::priority_queue<Panel> heap;
  const int n0 = std::max(1, opts.initial_panels);
  double total_err = 0.0;
  for (int i = 0; i < n0; ++i) {
    const double lo = a + (b - a) * i / n0;
    const double hi = (i + 1 == n0) ? b : a + (b - a) * (i + 1) / n0;
    Panel p = gauss_kronrod_15(f, lo, hi);
    total_err += p.error;
    heap.push(p);
    out.evaluations += kEvalsPerPanel;
  }

  while (total_err > opts.abs_tol &&
         out.evaluations + 2 * kEvalsPerPanel <= opts.max_evaluations) {
    Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      break; // panel at floating-point resolution
    }
    heap.pop();
    Panel left = gauss_kronrod_15(f, worst.a, mid);
    Panel right = gauss_kronrod_15(f, mid, worst.b);
    out.evaluations += 2 * kEvalsPerPanel;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum from scratch; the running error total drifts under cancellation.
  double value = 0.0;
  double err = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  out.value = sign * value;
  out.error = err;
  out.converged = err <= opts.abs_tol;
  return out;
}

QuadratureResult integrate_to_infinity(const Function& f, double a,
                                       const QuadratureOptions& opts) {
  const Function mapped = [&f, a](double x) {
    const double one_minus = 1.0 - x;
    if (one_minus <= 0.0) {
      return 0.0;
    }
    const double u = a + x / one_minus;
    const double jac = 1.0 / (one_minus * one_minus);
    const double v = f(u);
    return v == 0.0 ? 0.0 : v * jac;
  };
  return integrate(mapped, 0.0, 1.0, opts);
}

double find_root(const Function& f, double lo, double hi, double x_tol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) {
    return lo;
  }
  if (fhi == 0.0) {
    return hi;
  }
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw NoBracketError("find_root: no sign change on the supplied interval");
  }
  std::uintmax_t max_iter = 400;
  const auto tol = [x_tol](double x0, double x1) {
    const double w = std::abs(x1 - x0);
    return w <= x_tol || w <= 4.0 * std::numeric_limits<double>::epsilon() *
                                  std::max(std::abs(x0), std::abs(x1));
  };
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, max_iter);
  // Return the endpoint with the smaller residual.
  const double fa = std::abs(f(r.first));
  const double fb = std::abs(f(r.second));
  return fa <= fb ? r.first : r.second;
}

double bisect(const Function& f, double lo, double hi, double x_tol) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) {
    return lo;
  }
  if (fhi == 0.0) {
    return hi;
  }
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw NoBracketError("bisect: no sign change on the supplied interval");
  }
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi) || hi - lo <= x_tol) {
      break;
    }
    const double fm = f(mid);
    if (fm == 0.0) {
      return mid;
    }
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::optional<std::pair<double, double>> scan_for_bracket(const Function& f, double lo,
                                                          double hi, int points,
                                                          bool geometric) {
  if (points < 2 || !(hi > lo) || (geometric && lo <= 0.0)) {
    return std::nullopt;
  }
  const auto node = [&](int i) {
    if (i == points - 1) {
      return hi;
    }
    const double s = static_cast<double>(i) / (points - 1);
    return geometric ? lo * std::pow(hi / lo, s) : lo + (hi - lo) * s;
  };
  double x_prev = node(0);
  double f_prev = f(x_prev);
  if (f_prev == 0.0) {
    return std::pair{x_prev, x_prev};
  }
  for (int i = 1; i < points; ++i) {
    const double x = node(i);
    const double fx = f(x);
    if (fx == 0.0 || (fx > 0.0) != (f_prev > 0.0)) {
      if (std::isfinite(fx) && std::isfinite(f_prev)) {
        return std::pair{x_prev, x};
      }
    }
    x_prev = x;
    f_prev = fx;
  }
  return std::nullopt;
}

Extremum golden_section_maximize(const Function& f, double lo, double hi, double x_tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  if (hi < lo) {
    std::swap(lo, hi);
  }
  const double a0 = lo;
  const double b0 = hi;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > x_tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    }
  }
  // Endpoints are candidates too; the objective may peak on the boundary.
  Extremum best = f1 >= f2 ? Extremum{x1, f1} : Extremum{x2, f2};
  for (double x : {a0, b0}) {
    const double v = f(x);
    if (v > best.value) {
      best = {x, v};
    }
  }
  return best;
}

} // namespace bcrelay::numerics
