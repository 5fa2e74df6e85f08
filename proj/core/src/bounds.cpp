// SPDX-License-Identifier: Apache-2.0
#include "bcrelay/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bcrelay/numerics.hpp"

namespace bcrelay {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1 - exp(x) without cancellation near x = 0.
double one_minus_exp(double x) { return -std::expm1(x); }

} // namespace

BoundContext BoundContext::make(const TwoLayerAllocation& alloc, const PowerConfig& cfg) {
  const auto times = decoding_times(alloc, cfg);
  BoundContext ctx;
  ctx.alloc = alloc;
  ctx.cfg = cfg;
  ctx.x = times.eps2;
  const auto rates = layer_rates(alloc, cfg.p_s);
  ctx.r1 = rates.r1;
  ctx.r2 = rates.r2;
  return ctx;
}

BoundContext BoundContext::at_time(const TwoLayerAllocation& alloc, const PowerConfig& cfg,
                                   double x) {
  if (!(x >= 0.0 && x < 1.0)) {
    throw std::invalid_argument("BoundContext: decoding-time fraction must lie in [0, 1)");
  }
  BoundContext ctx;
  ctx.alloc = alloc;
  ctx.cfg = cfg;
  ctx.x = x;
  const auto rates = layer_rates(alloc, cfg.p_s);
  ctx.r1 = rates.r1;
  ctx.r2 = rates.r2;
  return ctx;
}

double BoundContext::fraction(BoundFamily family) const noexcept {
  return family == BoundFamily::equal ? alloc.alpha_bar() : alloc.beta_bar();
}

double log_t_factor(double v, const BoundContext& ctx) {
  if (!(ctx.x < 1.0)) {
    throw std::domain_error("t_factor: relay never forwards (X >= 1)");
  }
  const double s = v * ctx.cfg.p_s;
  const double log_c = std::log1p(s) - std::log1p(ctx.alloc.alpha_bar() * s);
  return (ctx.r1 - ctx.x * log_c) / (1.0 - ctx.x);
}

double t_factor(double v, const BoundContext& ctx) { return std::exp(log_t_factor(v, ctx)); }

double relay_threshold_or_inf(double v, const BoundContext& ctx, BoundFamily family) {
  const double lt = log_t_factor(v, ctx);
  const double abar = ctx.alloc.alpha_bar();
  const double frac = ctx.fraction(family);
  const double gate = frac > 0.0 ? one_minus_exp(lt + std::log(frac)) : 1.0;
  if (!(gate > 0.0)) {
    return kInf;
  }
  const double s = v * ctx.cfg.p_s;
  const double one_minus_t = one_minus_exp(lt);
  if (family == BoundFamily::equal) {
    return (-s - one_minus_t / gate) / ctx.cfg.p_r;
  }
  const double one_minus_ta = abar > 0.0 ? one_minus_exp(lt + std::log(abar)) : 1.0;
  return (-s * one_minus_ta / gate - one_minus_t / gate) / ctx.cfg.p_r;
}

double relay_threshold_bound(double v, const BoundContext& ctx, BoundFamily family) {
  const double k = relay_threshold_or_inf(v, ctx, family);
  if (std::isinf(k)) {
    throw std::domain_error("relay_threshold_bound: fading level below the discontinuity point");
  }
  return k;
}

double u_bound(double v, const BoundContext& ctx, double denom_fraction) {
  if (!(ctx.x < 1.0)) {
    throw std::domain_error("u_bound: relay never forwards (X >= 1)");
  }
  const double log_z = std::log1p(v * ctx.alloc.alpha_bar() * ctx.cfg.p_s);
  const double expo = (ctx.r2 - log_z) / (1.0 - ctx.x);
  const double scale = denom_fraction * ctx.cfg.p_r;
  if (!(scale > 0.0)) {
    return expo > 0.0 ? kInf : 0.0;
  }
  return std::exp(log_z) * std::expm1(expo) / scale;
}

double u_bound(double v, const BoundContext& ctx, BoundFamily family) {
  return u_bound(v, ctx, ctx.fraction(family));
}

double discontinuity_point(const BoundContext& ctx, BoundFamily family) {
  const double frac = ctx.fraction(family);
  if (!(frac > 0.0)) {
    return 0.0;
  }
  const double log_frac = std::log(frac);
  const auto g = [&](double v) { return log_t_factor(v, ctx) + log_frac; };
  if (g(0.0) <= 0.0) {
    return 0.0;
  }
  const double hi = ctx.alloc.eta1;
  if (g(hi) >= 0.0) {
    return hi; // only reachable through rounding at t(eta1) = e^{R1}
  }
  return numerics::bisect(g, 0.0, hi, 1e-12 * std::max(1.0, hi));
}

double discontinuity_point_closed_form(const BoundContext& ctx, BoundFamily family) {
  const double frac = ctx.fraction(family);
  if (!(frac > 0.0) || ctx.r1 / (1.0 - ctx.x) + std::log(frac) <= 0.0 || ctx.x <= 0.0) {
    return 0.0;
  }
  const double log_chi = (ctx.r1 + (1.0 - ctx.x) * std::log(frac)) / ctx.x;
  const double chi = std::exp(log_chi);
  const double denom = 1.0 - ctx.alloc.alpha_bar() * chi;
  if (!(denom > 0.0)) {
    return ctx.alloc.eta1;
  }
  const double v = std::expm1(log_chi) / denom / ctx.cfg.p_s;
  return std::clamp(v, 0.0, ctx.alloc.eta1);
}

std::vector<IntervalPartition::Piece> IntervalPartition::pieces() const {
  std::vector<Piece> out;
  if (!(upper > v_lo)) {
    return out;
  }
  Leading dom = leading;
  double a = v_lo;
  for (double c : crossings) {
    out.push_back({a, c, dom});
    a = c;
    dom = dom == Leading::u ? Leading::threshold : Leading::u;
  }
  out.push_back({a, upper, dom});
  return out;
}

namespace {

// +1 where the layer-1 threshold exceeds U, -1 otherwise.
double dominance(double v, const BoundContext& ctx, BoundFamily family) {
  const double u = u_bound(v, ctx, family);
  if (std::isinf(u)) {
    return -1.0;
  }
  const double thr = relay_threshold_or_inf(v, ctx, family);
  return thr > u ? 1.0 : -1.0;
}

double gap(double v, const BoundContext& ctx, BoundFamily family) {
  const double u = u_bound(v, ctx, family);
  const double thr = relay_threshold_or_inf(v, ctx, family);
  if (std::isinf(u)) {
    return -1.0;
  }
  return thr - u;
}

bool scan(const BoundContext& ctx, BoundFamily family, std::size_t n, IntervalPartition& part) {
  part.crossings.clear();
  const double lo = part.v_lo;
  const double hi = part.upper;
  const auto node = [&](std::size_t i) {
    return i == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
  };
  // At v_lo > 0 the threshold diverges, but it may fall below U within one
  // ulp; that sliver carries no probability, so U is taken to lead. At eta1
  // the threshold vanishes while U >= 0.
  const double first = part.v_lo > 0.0 ? (gap(std::nextafter(lo, hi), ctx, family) > 0.0 ? 1.0 : -1.0)
                                        : dominance(lo, ctx, family);
  part.leading = first > 0.0 ? IntervalPartition::Leading::threshold
                             : IntervalPartition::Leading::u;
  double prev = first;
  double v_prev = lo;
  const auto f = [&](double v) { return gap(v, ctx, family); };
  for (std::size_t i = 1; i <= n; ++i) {
    const double v = node(i);
    const double cur = i == n ? -1.0 : dominance(v, ctx, family);
    if (cur != prev) {
      double root = v;
      if (i != n) {
        const double a = i == 1 && part.v_lo > 0.0 ? std::nextafter(v_prev, hi) : v_prev;
        root = numerics::bisect(f, a, v, 0.0);
        part.crossings.push_back(root);
      } else if (prev > 0.0) {
        // threshold still above U on the last cell: crossing inside (v_prev, eta1)
        const double g_hi = f(hi);
        if (g_hi < 0.0) {
          part.crossings.push_back(numerics::bisect(f, v_prev, hi, 0.0));
        } else {
          part.crossings.push_back(hi);
        }
      }
    }
    prev = cur;
    v_prev = v;
  }
  const bool odd = part.crossings.size() % 2 == 1;
  return odd == (part.leading == IntervalPartition::Leading::threshold);
}

} // namespace

IntervalPartition find_intersections(const BoundContext& ctx, BoundFamily family,
                                     std::size_t scan_points) {
  IntervalPartition part;
  part.v_lo = discontinuity_point(ctx, family);
  part.upper = ctx.alloc.eta1;
  if (!(part.upper > part.v_lo)) {
    return part;
  }
  const std::size_t n = std::max<std::size_t>(scan_points, 2);
  if (scan(ctx, family, n, part)) {
    return part;
  }
  if (scan(ctx, family, 10 * n, part)) {
    return part;
  }
  throw std::runtime_error("find_intersections: crossing parity inconsistent after rescan");
}

} // namespace bcrelay
