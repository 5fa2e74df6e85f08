// SPDX-License-Identifier: Apache-2.0
#include "bcrelay/outage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bcrelay/numerics.hpp"

namespace bcrelay {

namespace {

constexpr double kEqualPowerTol = 1e-6;

} // namespace

double y_sum_tail(double u, double p_s, double p_r) {
  if (u <= 0.0) {
    return 1.0;
  }
  if (p_s <= 0.0 && p_r <= 0.0) {
    return 0.0;
  }
  if (p_s <= 0.0 || p_r <= 0.0) {
    return std::exp(-u / std::max(p_s, p_r));
  }
  const double hi = std::max(p_s, p_r);
  const double lo = std::min(p_s, p_r);
  if ((hi - lo) / hi < kEqualPowerTol) {
    const double p = 0.5 * (hi + lo);
    return (1.0 + u / p) * std::exp(-u / p);
  }
  const double v = (hi * std::exp(-u / hi) - lo * std::exp(-u / lo)) / (hi - lo);
  return std::clamp(v, 0.0, 1.0);
}

ThroughputResult single_user_throughput(double r, double p_s) {
  if (r <= 0.0) {
    return ThroughputResult::single_layer(std::max(r, 0.0), 1.0);
  }
  const double p = p_s > 0.0 ? std::exp(-std::expm1(r) / p_s) : 0.0;
  return ThroughputResult::single_layer(r, p);
}

double optimal_single_user_rate(double p_s) {
  if (!(p_s > 0.0)) {
    throw std::invalid_argument("optimal_single_user_rate: p_s must be positive");
  }
  // R e^R is increasing; R <= P_s and R <= log(P_s) + 1 bracket the root.
  const double hi = std::min(p_s, std::log1p(p_s) + 1.0);
  return numerics::find_root([p_s](double r) { return r * std::exp(r) - p_s; }, 0.0, hi,
                             1e-14);
}

ThroughputResult sdf_single_layer_throughput(double r, const PowerConfig& cfg) {
  if (r <= 0.0) {
    return ThroughputResult::single_layer(0.0, 1.0);
  }
  const double eps = single_layer_decoding_time(r, cfg.p_s, cfg.q);
  if (eps >= 1.0 || cfg.p_r <= 0.0) {
    return single_user_throughput(r, cfg.p_s);
  }
  const double p_s = cfg.p_s;
  const double p_r = cfg.p_r;
  const double eps_bar = 1.0 - eps;
  const double upper = std::expm1(r) / p_s;

  // Given nu_s = v below the single-user threshold, the relay must supply
  // nu_r P_r >= exp((R - eps log(1 + v P_s)) / (1 - eps)) - 1 - v P_s.
  const auto integrand = [=](double v) {
    const double need =
        std::exp((r - eps * std::log1p(v * p_s)) / eps_bar) - 1.0 - v * p_s;
    const double tail = need > 0.0 ? std::exp(-need / p_r) : 1.0;
    return tail * std::exp(-v);
  };
  numerics::QuadratureOptions opts;
  opts.abs_tol = 1e-9;
  opts.initial_panels = 16;
  const double helped = numerics::integrate(integrand, 0.0, upper, opts).value;
  const double p = std::min(1.0, std::exp(-upper) + helped);
  return ThroughputResult::single_layer(r, p);
}

ThroughputResult miso_single_layer_throughput(double r, double p_s, double p_r) {
  if (r <= 0.0) {
    return ThroughputResult::single_layer(0.0, 1.0);
  }
  return ThroughputResult::single_layer(r, y_sum_tail(std::expm1(r), p_s, p_r));
}

double ergodic_miso_capacity(double p_s, double p_r) {
  if (p_s <= 0.0 && p_r <= 0.0) {
    return 0.0;
  }
  // E[log(1+Y)] = int_0^inf P(Y > u) / (1 + u) du.
  const double scale = std::max(p_s, p_r);
  const auto f = [=](double x) {
    const double u = x * scale;
    return scale * y_sum_tail(u, p_s, p_r) / (1.0 + u);
  };
  numerics::QuadratureOptions opts;
  opts.abs_tol = 1e-10;
  return numerics::integrate_to_infinity(f, 0.0, opts).value;
}

} // namespace bcrelay
