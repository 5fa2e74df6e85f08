// SPDX-License-Identifier: Apache-2.0
#include "bcrelay/broadcast.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "bcrelay/numerics.hpp"

namespace bcrelay {

namespace {

constexpr double kBracketLo = 1e-8;
constexpr double kBracketHi = 1e4;
constexpr double kUnityTol = 1e-6;

} // namespace

FadingDistribution rayleigh_fading() {
  FadingDistribution d;
  d.cdf = [](double s) { return s <= 0.0 ? 0.0 : -std::expm1(-s); };
  d.survival = [](double s) { return s <= 0.0 ? 1.0 : std::exp(-s); };
  d.pdf = [](double s) { return s < 0.0 ? 0.0 : std::exp(-s); };
  d.pdf_derivative = [](double s) { return s < 0.0 ? 0.0 : -std::exp(-s); };
  d.label = "rayleigh";
  return d;
}

FadingDistribution sum_fading_distribution(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw std::invalid_argument("sum_fading_distribution: ratio must be positive and finite");
  }
  FadingDistribution d;
  if (std::abs(a - 1.0) < kUnityTol) {
    d.survival = [](double s) { return s <= 0.0 ? 1.0 : (1.0 + s) * std::exp(-s); };
    d.cdf = [](double s) {
      return s <= 0.0 ? 0.0 : -std::expm1(-s) - s * std::exp(-s);
    };
    d.pdf = [](double s) { return s < 0.0 ? 0.0 : s * std::exp(-s); };
    d.pdf_derivative = [](double s) { return s < 0.0 ? 0.0 : (1.0 - s) * std::exp(-s); };
    d.label = "sum-fading(a=1)";
    return d;
  }
  const double am1 = a - 1.0;
  d.survival = [a, am1](double s) {
    if (s <= 0.0) {
      return 1.0;
    }
    return std::clamp((a * std::exp(-s / a) - std::exp(-s)) / am1, 0.0, 1.0);
  };
  d.cdf = [a, am1](double s) {
    if (s <= 0.0) {
      return 0.0;
    }
    // 1 - S(s) written to keep accuracy near s = 0.
    const double v = (a * std::expm1(-s / a) - std::expm1(-s)) / -am1;
    return std::clamp(v, 0.0, 1.0);
  };
  d.pdf = [a, am1](double s) {
    return s < 0.0 ? 0.0 : (std::exp(-s / a) - std::exp(-s)) / am1;
  };
  d.pdf_derivative = [a, am1](double s) {
    return s < 0.0 ? 0.0 : (std::exp(-s) - std::exp(-s / a) / a) / am1;
  };
  d.label = "sum-fading(a=" + std::to_string(a) + ")";
  return d;
}

double unclipped_optimal_residual(const FadingDistribution& dist, double u) {
  const double f = dist.pdf(u);
  return (dist.survival(u) - u * f) / (u * u * f);
}

PowerDensity flat_power_density(double total_power) {
  PowerDensity pd;
  pd.total_power = total_power;
  pd.residual = [total_power](double) { return total_power; };
  pd.density = [](double) { return 0.0; };
  pd.u0 = 0.0;
  pd.u1 = 0.0;
  pd.analytic_density = true;
  return pd;
}

PowerDensity optimal_power_density(double total_power, const FadingDistribution& dist) {
  if (!(total_power > 0.0)) {
    throw std::invalid_argument("optimal_power_density: total power must be positive");
  }
  // u1: the numerator 1 - F - u f changes sign. Scanning 1 - u f / (1 - F)
  // keeps the sign computable after both tails underflow.
  const auto numerator_sign = [&dist](double u) {
    const double s = dist.survival(u);
    if (!(s > 0.0)) {
      return std::numeric_limits<double>::quiet_NaN();
    }
    return 1.0 - u * dist.pdf(u) / s;
  };
  PowerDensity pd;
  pd.total_power = total_power;

  const auto u1_bracket =
      numerics::scan_for_bracket(numerator_sign, kBracketLo, kBracketHi, 4000, true);
  if (!u1_bracket) {
    throw UnsupportedDistribution("optimal_power_density: I(u) = 0 not bracketed in [1e-8, 1e4] for " +
                                  dist.label);
  }
  pd.u1 = numerics::find_root(numerator_sign, u1_bracket->first, u1_bracket->second);

  const auto excess = [&dist, total_power](double u) {
    return unclipped_optimal_residual(dist, u) - total_power;
  };
  if (excess(kBracketLo) <= 0.0) {
    pd.u0 = kBracketLo;
    pd.u0_at_bracket_edge = true;
  } else {
    pd.u0 = numerics::find_root(excess, kBracketLo, pd.u1);
  }
  if (pd.u1 >= kBracketHi) {
    pd.u1_at_bracket_edge = true;
  }

  auto shared = std::make_shared<FadingDistribution>(dist);
  const double u0 = pd.u0;
  const double u1 = pd.u1;
  pd.residual = [shared, u0, u1, total_power](double u) {
    if (u <= u0) {
      return total_power;
    }
    if (u >= u1) {
      return 0.0;
    }
    return std::clamp(unclipped_optimal_residual(*shared, u), 0.0, total_power);
  };

  if (dist.pdf_derivative) {
    pd.analytic_density = true;
    pd.density = [shared, u0, u1](double u) {
      if (u <= u0 || u >= u1) {
        return 0.0;
      }
      const double f = shared->pdf(u);
      const double fp = shared->pdf_derivative(u);
      const double num = shared->survival(u) - u * f;
      const double num_d = -2.0 * f - u * fp;
      const double den = u * u * f;
      const double den_d = 2.0 * u * f + u * u * fp;
      return -(num_d * den - num * den_d) / (den * den);
    };
  } else {
    auto residual = pd.residual;
    pd.density = [residual, u0, u1](double u) {
      if (u <= u0 || u >= u1) {
        return 0.0;
      }
      // Central difference, step ~ cbrt(eps) relative to the distance to
      // the nearest boundary so that the stencil never straddles u0 or u1.
      const double room = std::min(u - u0, u1 - u);
      const double h = std::min(6e-6 * std::max(u, 1e-3), 0.5 * room);
      return std::max(0.0, -(residual(u + h) - residual(u - h)) / (2.0 * h));
    };
  }
  return pd;
}

double broadcast_rate(const PowerDensity& density, const FadingDistribution& dist) {
  if (!(density.u1 > density.u0)) {
    return 0.0;
  }
  const auto integrand = [&](double u) {
    const double rho = density.density(u);
    if (rho == 0.0) {
      return 0.0;
    }
    return dist.survival(u) * u * rho / (1.0 + u * density.residual(u));
  };
  numerics::QuadratureOptions opts;
  opts.abs_tol = 1e-11;
  opts.initial_panels = 16;
  return numerics::integrate(integrand, density.u0, density.u1, opts).value;
}

double relay_or_miso_broadcast_bound(const PowerConfig& cfg, BroadcastBound mode) {
  if (!(cfg.p_s > 0.0)) {
    throw std::invalid_argument("relay_or_miso_broadcast_bound: p_s must be positive");
  }
  const double a = cfg.p_r / cfg.p_s;
  const FadingDistribution seen = a > 0.0 ? sum_fading_distribution(a) : rayleigh_fading();
  if (mode == BroadcastBound::relay) {
    return broadcast_rate(optimal_power_density(cfg.p_s, rayleigh_fading()), seen);
  }
  return broadcast_rate(optimal_power_density(cfg.p_s, seen), seen);
}

} // namespace bcrelay
