// SPDX-License-Identifier: Apache-2.0
#include "bcrelay/two_layer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "bcrelay/numerics.hpp"
#include "bcrelay/outage.hpp"

namespace bcrelay {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// int_a^b exp(-v - m (c - v)) dv for c >= b >= a, m >= 0.
double tilted_exp_integral(double m, double c, double a, double b) {
  if (!(b > a)) {
    return 0.0;
  }
  if (std::isinf(m)) {
    return 0.0;
  }
  if (std::abs(m - 1.0) < 1e-9) {
    return std::exp(-c) * (b - a);
  }
  const double x = (m - 1.0) * (b - a);
  if (x > 50.0) {
    return (std::exp(-b - m * (c - b)) - std::exp(-a - m * (c - a))) / (m - 1.0);
  }
  return std::exp(-a - m * (c - a)) * std::expm1(x) / (m - 1.0);
}

template <typename Tail>
ThroughputResult layered_throughput(const LayerPlan& plan, double p_s, Tail tail) {
  plan.validate();
  const auto rates = multilayer_rates(plan, p_s);
  if (rates.size() == 1) {
    return ThroughputResult::single_layer(rates[0], tail(plan.thresholds[0]));
  }
  const double p1 = tail(plan.thresholds[0]);
  double r_rest = 0.0;
  double weighted = 0.0;
  for (std::size_t i = 1; i < rates.size(); ++i) {
    r_rest += rates[i];
    weighted += rates[i] * tail(plan.thresholds[i]);
  }
  const double p_rest = r_rest > 0.0 ? std::min(p1, weighted / r_rest) : p1;
  return ThroughputResult::from_probabilities(rates[0], r_rest, p1, p_rest);
}

ThroughputResult finish(double r1, double r2, double p1, double p2) {
  p1 = std::clamp(p1, 0.0, 1.0);
  p2 = r2 > 0.0 ? std::clamp(std::min(p2, p1), 0.0, 1.0) : p1;
  return ThroughputResult::from_probabilities(r1, r2, p1, p2);
}

numerics::QuadratureOptions piece_options() {
  numerics::QuadratureOptions opts;
  opts.abs_tol = 1e-9;
  opts.initial_panels = 4;
  return opts;
}

} // namespace

void LayerPlan::validate() const {
  if (thresholds.empty() || thresholds.size() != fractions.size()) {
    throw std::invalid_argument("LayerPlan: need matching, non-empty thresholds and fractions");
  }
  double prev = 0.0;
  for (double t : thresholds) {
    if (!std::isfinite(t) || t < prev) {
      throw std::invalid_argument("LayerPlan: thresholds must be finite, >= 0 and non-decreasing");
    }
    prev = t;
  }
  double sum = 0.0;
  for (double f : fractions) {
    if (!(f >= 0.0)) {
      throw std::invalid_argument("LayerPlan: fractions must be >= 0");
    }
    sum += f;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("LayerPlan: fractions must sum to 1");
  }
}

LayerPlan LayerPlan::from(const TwoLayerAllocation& alloc) {
  return {{alloc.eta1, alloc.eta2}, {alloc.alpha, alloc.alpha_bar()}};
}

std::vector<double> multilayer_rates(const LayerPlan& plan, double p_s) {
  const std::size_t n = plan.size();
  std::vector<double> rates(n);
  double rest = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    const double eta_p = plan.thresholds[k] * p_s;
    rates[k] = std::max(0.0, std::log1p(eta_p * (plan.fractions[k] + rest)) -
                                 std::log1p(eta_p * rest));
    rest += plan.fractions[k];
  }
  return rates;
}

ThroughputResult direct_multilayer_throughput(const LayerPlan& plan, double p_s) {
  return layered_throughput(plan, p_s, [](double eta) { return std::exp(-eta); });
}

ThroughputResult direct_throughput(const TwoLayerAllocation& alloc, double p_s) {
  alloc.validate();
  return direct_multilayer_throughput(LayerPlan::from(alloc), p_s);
}

ThroughputResult miso_equal_throughput(const LayerPlan& plan, double p_s, double p_r) {
  return layered_throughput(plan, p_s,
                            [=](double eta) { return y_sum_tail(eta * p_s, p_s, p_r); });
}

ThroughputResult miso_equal_throughput(const TwoLayerAllocation& alloc, double p_s, double p_r) {
  alloc.validate();
  return miso_equal_throughput(LayerPlan::from(alloc), p_s, p_r);
}

MisoSlopes miso_slopes(const TwoLayerAllocation& alloc, double p_s, double p_r) {
  const double abar = alloc.alpha_bar();
  const double bbar = alloc.beta_bar();
  const double d = alloc.beta + alloc.eta1 * p_s * (alloc.beta - alloc.alpha);
  MisoSlopes s;
  s.n = bbar > 0.0 ? abar * p_s / (bbar * p_r) : (abar > 0.0 ? kInf : 0.0);
  s.k = d != 0.0 ? alloc.alpha * p_s / (d * p_r) : kInf;
  return s;
}

ThroughputResult miso_unequal_throughput(const TwoLayerAllocation& alloc, double p_s, double p_r,
                                         MisoBranchGuard guard) {
  alloc.validate();
  if (!(p_r > 0.0)) {
    return direct_throughput(alloc, p_s);
  }
  const auto [r1, r2] = layer_rates(alloc, p_s);
  const double eta1 = alloc.eta1;
  const double eta2 = alloc.eta2;
  const double abar = alloc.alpha_bar();
  // D has the sign of 1 - e^{R1} beta_bar.
  const double d = alloc.beta + eta1 * p_s * (alloc.beta - alloc.alpha);
  const bool relay_heavy = guard == MisoBranchGuard::relay_split
                               ? d < 0.0
                               : -std::expm1(r1 + std::log(abar)) < 0.0;
  const bool boundary = guard == MisoBranchGuard::relay_split && d == 0.0;
  const double n = miso_slopes(alloc, p_s, p_r).n;

  double p1 = 0.0;
  double p2 = 0.0;
  if (boundary) {
    // Layer 1 needs nu_s >= eta1 whatever the relay fading.
    p1 = std::exp(-eta1);
    p2 = tilted_exp_integral(n, eta2, eta1, eta2) + std::exp(-eta2);
  } else if (!relay_heavy) {
    // Layer 1: nu_r >= k (eta1 - nu_s); layer 2: nu_r >= n (eta2 - nu_s).
    const double k = alloc.alpha * p_s / (d * p_r);
    p1 = std::exp(-eta1) + tilted_exp_integral(k, eta1, 0.0, eta1);
    if (std::isinf(n)) {
      p2 = std::exp(-eta2);
    } else {
      double v1 = 0.0;
      if (k * eta1 > n * eta2 && k > n) {
        v1 = std::clamp((k * eta1 - n * eta2) / (k - n), 0.0, eta1);
      }
      p2 = tilted_exp_integral(k, eta1, 0.0, v1) + tilted_exp_integral(n, eta2, v1, eta2) +
           std::exp(-eta2);
    }
  } else {
    // The relay's layer-1 share is so small that a strong relay fading buries
    // layer 1: decodable iff nu_s >= eta1 and nu_r <= kappa (nu_s - eta1).
    const double kappa = alloc.alpha * p_s / (-d * p_r);
    p1 = std::exp(-eta1) * kappa / (1.0 + kappa);
    const double v2 = (kappa * eta1 + n * eta2) / (kappa + n);
    p2 = tilted_exp_integral(n, eta2, v2, eta2) + std::exp(-eta2) -
         std::exp(-v2 - kappa * (v2 - eta1)) / (1.0 + kappa);
  }
  if (guard == MisoBranchGuard::source_split) {
    // Diagnostic reading: report as evaluated, no clamping.
    return ThroughputResult::from_probabilities(r1, r2, p1, abar > 0.0 ? p2 : p1);
  }
  return finish(r1, r2, p1, abar > 0.0 ? p2 : p1);
}

double miso_unequal_upper_bound(const TwoLayerAllocation& alloc, double p_s) {
  const auto [r1, r2] = layer_rates(alloc, p_s);
  return r1 * std::exp(-alloc.eta1) * (1.0 + alloc.eta1) +
         r2 * std::exp(-alloc.eta2) * (1.0 + alloc.eta2);
}

ThroughputResult simplex_throughput_at(const BoundContext& ctx, BoundFamily family) {
  const auto& alloc = ctx.alloc;
  if (!(ctx.cfg.p_r > 0.0)) {
    return direct_throughput(alloc, ctx.cfg.p_s);
  }
  const double eta1 = alloc.eta1;
  const double eta2 = alloc.eta2;
  const auto opts = piece_options();

  const auto u_of = [&](double v) { return u_bound(v, ctx, family); };
  const auto thr_of = [&](double v) {
    return std::max(0.0, relay_threshold_or_inf(v, ctx, family));
  };

  double p1 = 1.0;
  double p2_low = 0.0;   // contribution of nu_s below eta1
  double u_lower = 0.0;  // start of the region where layer 1 is certain
  if (ctx.r1 > 0.0) {
    u_lower = eta1;
    const auto part = find_intersections(ctx, family);
    p1 = std::exp(-eta1);
    if (part.upper > part.v_lo) {
      p1 += numerics::integrate([&](double v) { return std::exp(-thr_of(v) - v); }, part.v_lo,
                                eta1, opts)
                .value;
      if (ctx.r2 > 0.0) {
        for (const auto& piece : part.pieces()) {
          p2_low += numerics::integrate(
                        [&](double v) {
                          return std::exp(-std::max({thr_of(v), u_of(v), 0.0}) - v);
                        },
                        piece.a, piece.b, opts)
                        .value;
        }
      }
    }
  }
  double p2 = p1;
  if (ctx.r2 > 0.0) {
    p2 = std::exp(-eta2) + p2_low +
         numerics::integrate([&](double v) { return std::exp(-std::max(0.0, u_of(v)) - v); },
                             u_lower, eta2, opts)
             .value;
  }
  return finish(ctx.r1, ctx.r2, p1, p2);
}

namespace {

ThroughputResult simplex_route(const TwoLayerAllocation& alloc, const PowerConfig& cfg,
                               BoundFamily family) {
  alloc.validate();
  cfg.validate();
  if (!(cfg.p_r > 0.0)) {
    return direct_throughput(alloc, cfg.p_s);
  }
  const double x = decoding_times(alloc, cfg).eps2;
  if (x >= 1.0) {
    return direct_throughput(alloc, cfg.p_s);
  }
  if (x <= 0.0) {
    return family == BoundFamily::equal ? miso_equal_throughput(alloc, cfg.p_s, cfg.p_r)
                                        : miso_unequal_throughput(alloc, cfg.p_s, cfg.p_r);
  }
  return simplex_throughput_at(BoundContext::at_time(alloc, cfg, x), family);
}

} // namespace

ThroughputResult simplex_equal_throughput(const TwoLayerAllocation& alloc,
                                          const PowerConfig& cfg) {
  return simplex_route(alloc.with_equal_split(), cfg, BoundFamily::equal);
}

ThroughputResult simplex_unequal_throughput(const TwoLayerAllocation& alloc,
                                            const PowerConfig& cfg) {
  if (alloc.beta < alloc.alpha) {
    throw std::invalid_argument("simplex_unequal_throughput: requires beta >= alpha");
  }
  return simplex_route(alloc, cfg, BoundFamily::unequal);
}

DuplexVerdict duplex_gain_condition(const TwoLayerAllocation& alloc, const PowerConfig& cfg) {
  alloc.validate();
  const double abar = alloc.alpha_bar();
  DuplexVerdict v;
  v.margin = 2.0 * abar + cfg.q * abar * abar * cfg.p_s - 1.0;
  v.simplex_sufficient = v.margin > 0.0;
  const auto [r1, r2] = layer_rates(alloc, cfg.p_s);
  v.rate_ordering_holds = r1 > r2;
  const auto times = decoding_times(alloc, cfg);
  v.decoding_times_coincide = times.eps1 == times.eps2;
  return v;
}

} // namespace bcrelay
