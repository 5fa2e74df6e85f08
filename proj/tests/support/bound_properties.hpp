// SPDX-License-Identifier: Apache-2.0
#pragma once

// Grid checks of the relay-threshold functions shared by the unit tests and
// the acceptance suite. Each check appends a description of every violation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "bcrelay/bounds.hpp"
#include "bcrelay/model.hpp"
#include "bcrelay/rng.hpp"

namespace bcrelay::testing {

struct BoundDraw {
  TwoLayerAllocation alloc;
  PowerConfig cfg;
  double x = 0.5;
  double x_alt = 0.3;
};

inline double uniform(const RandomStream& rng, std::uint64_t i, int lane, double lo, double hi) {
  return lo + (hi - lo) * to_unit_interval(rng.at(i)[static_cast<std::size_t>(lane)]);
}

/// Random plan with beta >= alpha and two forwarding times in [0.05, 0.9].
inline BoundDraw draw_bound_params(std::uint64_t seed, std::uint64_t index) {
  const RandomStream rng = RandomStream(seed, 0xb0).split(index);
  BoundDraw d;
  d.alloc.alpha = uniform(rng, 0, 0, 0.1, 0.95);
  d.alloc.beta = d.alloc.alpha + uniform(rng, 0, 1, 0.0, 1.0) * (1.0 - d.alloc.alpha);
  d.alloc.eta1 = uniform(rng, 0, 2, 0.1, 2.0);
  d.alloc.eta2 = d.alloc.eta1 + uniform(rng, 0, 3, 0.1, 3.0);
  d.cfg.p_s = std::pow(10.0, uniform(rng, 1, 0, -0.5, 2.5));
  d.cfg.p_r = std::pow(10.0, uniform(rng, 1, 1, -0.5, 2.5));
  d.cfg.q = std::pow(10.0, uniform(rng, 1, 2, 0.0, 3.0));
  d.x = uniform(rng, 1, 3, 0.05, 0.9);
  d.x_alt = uniform(rng, 2, 0, 0.05, 0.9);
  return d;
}

class Violations {
public:
  explicit Violations(std::string prefix) : prefix_(std::move(prefix)) {}

  void add(const std::string& what, double v, double detail) {
    std::ostringstream s;
    s.precision(10);
    s << prefix_ << what << " at v=" << v << " (" << detail << ")";
    list_.push_back(s.str());
  }
  const std::vector<std::string>& list() const { return list_; }

private:
  std::string prefix_;
  std::vector<std::string> list_;
};

inline std::vector<double> grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return g;
}

inline double scale(double v) { return std::max(1.0, std::abs(v)); }

/// Every property of the threshold functions for one draw.
inline std::vector<std::string> check_bound_properties(const BoundDraw& d, std::size_t n = 1000) {
  std::ostringstream tag;
  tag << "[alpha=" << d.alloc.alpha << " beta=" << d.alloc.beta << " eta1=" << d.alloc.eta1
      << " eta2=" << d.alloc.eta2 << " ps=" << d.cfg.p_s << " pr=" << d.cfg.p_r << " x=" << d.x
      << "] ";
  Violations bad(tag.str());
  const BoundContext ctx = BoundContext::at_time(d.alloc, d.cfg, d.x);
  const double eta1 = d.alloc.eta1;
  const double eta2 = d.alloc.eta2;
  const double abar = d.alloc.alpha_bar();
  constexpr auto eq = BoundFamily::equal;
  constexpr auto uneq = BoundFamily::unequal;

  // t: value at eta1, strictly decreasing in v, increasing in X.
  const double t_eta1 = t_factor(eta1, ctx);
  if (std::abs(t_eta1 - std::exp(ctx.r1)) > 1e-10 * std::exp(ctx.r1)) {
    bad.add("t(eta1) != e^R1", eta1, t_eta1);
  }
  const auto g1 = grid(0.0, eta1, n);
  for (std::size_t i = 1; i < n; ++i) {
    if (!(t_factor(g1[i], ctx) < t_factor(g1[i - 1], ctx))) {
      bad.add("t not strictly decreasing", g1[i], t_factor(g1[i], ctx));
    }
  }
  const double x_hi = std::max(d.x, d.x_alt);
  const double x_lo = std::min(d.x, d.x_alt);
  const BoundContext ctx_hi = BoundContext::at_time(d.alloc, d.cfg, x_hi);
  const BoundContext ctx_lo = BoundContext::at_time(d.alloc, d.cfg, x_lo);
  if (x_hi > x_lo) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!(t_factor(g1[i], ctx_hi) > t_factor(g1[i], ctx_lo))) {
        bad.add("t not increasing in X", g1[i], t_factor(g1[i], ctx_hi));
      }
    }
  }

  // Discontinuity point and the sign rule around it.
  const double v_dc = discontinuity_point(ctx, eq);
  if (std::exp(ctx.r1 / (1.0 - ctx.x)) * abar <= 1.0) {
    if (v_dc != 0.0) {
      bad.add("v_dc should be 0", v_dc, 0.0);
    }
  } else {
    if (std::abs(t_factor(v_dc, ctx) * abar - 1.0) > 1e-9) {
      bad.add("v_dc residual", v_dc, t_factor(v_dc, ctx) * abar - 1.0);
    }
    if (!(v_dc < eta1)) {
      bad.add("v_dc >= eta1", v_dc, eta1);
    }
  }
  const double v_dc_cf = discontinuity_point_closed_form(ctx, eq);
  if (std::abs(v_dc_cf - v_dc) > 1e-8 * scale(v_dc)) {
    bad.add("closed-form v_dc disagrees", v_dc, v_dc_cf);
  }
  for (double v : g1) {
    const double gate = 1.0 - t_factor(v, ctx) * abar;
    const bool finite = std::isfinite(relay_threshold_or_inf(v, ctx, eq));
    if (std::abs(v - v_dc) > 1e-9 * scale(v_dc) && finite != (gate > 0.0)) {
      bad.add("F finiteness does not follow sign(1 - t abar)", v, gate);
    }
  }

  // F: zero at eta1, strictly decreasing on (v_dc, eta1].
  const double f_eta1 = relay_threshold_bound(eta1, ctx, eq);
  if (std::abs(f_eta1) > 1e-12 * scale(eta1 * d.cfg.p_s) / std::min(1.0, d.cfg.p_r)) {
    bad.add("F(eta1) != 0", eta1, f_eta1);
  }
  const auto gf = grid(v_dc, eta1, n + 1);
  for (std::size_t i = 2; i <= n; ++i) {
    const double a = relay_threshold_or_inf(gf[i - 1], ctx, eq);
    const double b = relay_threshold_or_inf(gf[i], ctx, eq);
    if (!(b < a)) {
      bad.add("F not strictly decreasing", gf[i], b - a);
    }
  }

  // K: identical to F at beta = alpha; decreasing where 1 - t abar > 0.
  const BoundContext ctx_eq = BoundContext::at_time(d.alloc.with_equal_split(), d.cfg, d.x);
  for (double v : gf) {
    const double f = relay_threshold_or_inf(v, ctx_eq, eq);
    const double k = relay_threshold_or_inf(v, ctx_eq, uneq);
    if (std::isfinite(f) && std::abs(f - k) > 1e-12 * scale(f)) {
      bad.add("K != F at beta = alpha", v, k - f);
    }
  }
  double k_prev = INFINITY;
  for (double v : gf) {
    if (!(1.0 - t_factor(v, ctx) * abar > 0.0)) {
      continue;
    }
    const double k = relay_threshold_or_inf(v, ctx, uneq);
    if (k > k_prev + 1e-12 * scale(k)) {
      bad.add("K not decreasing", v, k - k_prev);
    }
    const double f = relay_threshold_or_inf(v, ctx, eq);
    // both thresholds are differences of terms of size v P_s / P_r
    if (k > f + 1e-12 * scale(v * d.cfg.p_s / d.cfg.p_r) * scale(f)) {
      bad.add("K above F", v, k - f);
    }
    k_prev = k;
  }

  // Max rule: the later forwarding time gives the larger threshold.
  for (double v : g1) {
    const double f_hi = relay_threshold_or_inf(v, ctx_hi, eq);
    const double f_lo = relay_threshold_or_inf(v, ctx_lo, eq);
    if (std::isfinite(f_hi) && std::isfinite(f_lo) && f_hi < f_lo - 1e-12 * scale(f_lo)) {
      bad.add("F(X_max) < F(X_min)", v, f_hi - f_lo);
    }
    if (std::isinf(f_lo) && std::isfinite(f_hi)) {
      bad.add("F(X_max) finite where F(X_min) is not", v, f_hi);
    }
  }

  // U: zero at eta2, strictly decreasing and convex on [0, eta2).
  for (auto fam : {eq, uneq}) {
    if (ctx.fraction(fam) <= 0.0) {
      continue;
    }
    const double u_eta2 = u_bound(eta2, ctx, fam);
    if (std::abs(u_eta2) > 1e-12) {
      bad.add("U(eta2) != 0", eta2, u_eta2);
    }
    const auto g2 = grid(0.0, eta2, n + 1);
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = u_bound(g2[i], ctx, fam);
    }
    for (std::size_t i = 1; i < n; ++i) {
      if (!(u[i] < u[i - 1])) {
        bad.add("U not strictly decreasing", g2[i], u[i] - u[i - 1]);
      }
      if (i + 1 < n) {
        const double second = u[i + 1] - 2.0 * u[i] + u[i - 1];
        if (second < -1e-9 * scale(u[i])) {
          bad.add("U not convex", g2[i], second);
        }
      }
    }
  }

  // Partition: crossings are roots of F - U and dominance alternates.
  for (auto fam : {eq, uneq}) {
    const IntervalPartition part = find_intersections(ctx, fam);
    for (double c : part.crossings) {
      const double f = relay_threshold_or_inf(c, ctx, fam);
      const double u = u_bound(c, ctx, fam);
      // Next to the pole the threshold is too steep for a value residual:
      // 1 - t * fraction cancels, and both bounds jitter from ulp to ulp.
      // There the root is certified by a sign change within a few ulps, or
      // by a residual no larger than that jitter.
      double lo = c;
      double hi = c;
      double jitter = 0.0;
      for (int k = 0; k < 4; ++k) {
        lo = std::nextafter(lo, 0.0);
        hi = std::nextafter(hi, INFINITY);
        for (double w : {lo, hi}) {
          const double spread = std::abs(relay_threshold_or_inf(w, ctx, fam) - f) +
                                std::abs(u_bound(w, ctx, fam) - u);
          if (std::isfinite(spread)) {
            jitter = std::max(jitter, spread);
          }
        }
      }
      const double g_lo = relay_threshold_or_inf(lo, ctx, fam) - u_bound(lo, ctx, fam);
      const double g_hi = relay_threshold_or_inf(hi, ctx, fam) - u_bound(hi, ctx, fam);
      const bool bracketed = (g_lo > 0.0) != (g_hi > 0.0);
      if (!(std::abs(f - u) < 1e-9 * scale(f) + jitter) && !bracketed) {
        bad.add("crossing residual", c, f - u);
      }
    }
    for (const auto& piece : part.pieces()) {
      const double mid = 0.5 * (piece.a + piece.b);
      if (!(piece.b - piece.a > 1e-9 * scale(piece.b))) {
        continue;
      }
      const double f = relay_threshold_or_inf(mid, ctx, fam);
      const double u = u_bound(mid, ctx, fam);
      const bool thr_leads = f > u;
      if (thr_leads != (piece.dominant == IntervalPartition::Leading::threshold)) {
        bad.add("dominance mismatch", mid, f - u);
      }
    }
  }
  return bad.list();
}

} // namespace bcrelay::testing
