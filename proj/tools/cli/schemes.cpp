// SPDX-License-Identifier: Apache-2.0
#include "schemes.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

#include <bcrelay/broadcast.hpp>
#include <bcrelay/numerics.hpp>
#include <bcrelay/outage.hpp>
#include <bcrelay/two_layer.hpp>

namespace bcrelay::cli {

namespace {

constexpr std::array<std::pair<Scheme, std::string_view>, 13> kSchemeNames{{
    {Scheme::single_layer, "single-layer"},
    {Scheme::single_layer_sdf, "single-layer-sdf"},
    {Scheme::single_layer_miso, "single-layer-miso"},
    {Scheme::direct, "direct"},
    {Scheme::miso_equal, "miso-equal"},
    {Scheme::miso_unequal, "miso-unequal"},
    {Scheme::simplex_equal, "simplex-equal"},
    {Scheme::simplex_unequal, "simplex-unequal"},
    {Scheme::full_duplex, "full-duplex"},
    {Scheme::continuous_siso, "continuous-siso"},
    {Scheme::broadcast_relay, "broadcast-relay"},
    {Scheme::broadcast_miso, "broadcast-miso"},
    {Scheme::ergodic_miso, "ergodic-miso"},
}};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ThroughputResult rate_only(double r_av) {
  return {kNaN, kNaN, kNaN, kNaN, r_av};
}

Objective objective_of(Scheme s) {
  switch (s) {
  case Scheme::direct:
    return Objective::direct;
  case Scheme::miso_equal:
    return Objective::miso_equal;
  case Scheme::miso_unequal:
    return Objective::miso_unequal;
  case Scheme::simplex_equal:
  case Scheme::full_duplex:
    return Objective::simplex_equal;
  case Scheme::simplex_unequal:
    return Objective::simplex_unequal;
  default:
    throw std::invalid_argument("scheme '" + std::string(to_string(s)) + "' has no two-layer objective");
  }
}

double single_rate_upper(const PowerConfig& cfg) {
  return std::log1p(50.0 * (cfg.p_s + cfg.p_r)) + 1.0;
}

std::function<double(double)> single_layer_curve(Scheme s, const PowerConfig& cfg) {
  return [s, cfg](double r) { return closed_form(s, TwoLayerAllocation{}, r, cfg).r_av; };
}

} // namespace

std::string_view to_string(Scheme s) noexcept {
  for (const auto& [k, name] : kSchemeNames) {
    if (k == s) {
      return name;
    }
  }
  return "unknown";
}

Scheme scheme_from_string(std::string_view name) {
  for (const auto& [k, n] : kSchemeNames) {
    if (n == name) {
      return k;
    }
  }
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

std::vector<std::string> scheme_names() {
  std::vector<std::string> out;
  for (const auto& kv : kSchemeNames) {
    out.emplace_back(kv.second);
  }
  return out;
}

bool is_single_layer(Scheme s) noexcept {
  return s == Scheme::single_layer || s == Scheme::single_layer_sdf ||
         s == Scheme::single_layer_miso;
}

bool is_two_layer(Scheme s) noexcept {
  switch (s) {
  case Scheme::direct:
  case Scheme::miso_equal:
  case Scheme::miso_unequal:
  case Scheme::simplex_equal:
  case Scheme::simplex_unequal:
  case Scheme::full_duplex:
    return true;
  default:
    return false;
  }
}

bool has_closed_form(Scheme s) noexcept { return s != Scheme::full_duplex; }

bool is_unequal(Scheme s) noexcept {
  return s == Scheme::miso_unequal || s == Scheme::simplex_unequal;
}

std::string_view to_string(PlanMode m) noexcept {
  switch (m) {
  case PlanMode::fixed:
    return "fixed";
  case PlanMode::oblivious:
    return "oblivious";
  case PlanMode::optimized:
    return "optimized";
  }
  return "unknown";
}

PlanMode plan_mode_from_string(std::string_view name) {
  for (auto m : {PlanMode::fixed, PlanMode::oblivious, PlanMode::optimized}) {
    if (to_string(m) == name) {
      return m;
    }
  }
  throw std::invalid_argument("unknown plan mode '" + std::string(name) + "'");
}

double best_single_rate(const std::function<double(double)>& throughput, double r_max) {
  constexpr int kPoints = 400;
  const double h = r_max / kPoints;
  int best = 0;
  double best_v = -1.0;
  for (int i = 0; i <= kPoints; ++i) {
    const double v = throughput(i * h);
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  const double lo = std::max(0.0, (best - 1) * h);
  const double hi = std::min(r_max, (best + 1) * h);
  const auto refined = numerics::golden_section_maximize(throughput, lo, hi, 1e-10);
  return refined.value > best_v ? refined.x : best * h;
}

ThroughputResult closed_form(Scheme s, const TwoLayerAllocation& alloc, double rate,
                             const PowerConfig& cfg) {
  switch (s) {
  case Scheme::single_layer:
    return single_user_throughput(rate, cfg.p_s);
  case Scheme::single_layer_sdf:
    return sdf_single_layer_throughput(rate, cfg);
  case Scheme::single_layer_miso:
    return miso_single_layer_throughput(rate, cfg.p_s, cfg.p_r);
  case Scheme::direct:
    return direct_throughput(alloc, cfg.p_s);
  case Scheme::miso_equal:
    return miso_equal_throughput(alloc, cfg.p_s, cfg.p_r);
  case Scheme::miso_unequal:
    return miso_unequal_throughput(alloc, cfg.p_s, cfg.p_r);
  case Scheme::simplex_equal:
    return simplex_equal_throughput(alloc, cfg);
  case Scheme::simplex_unequal:
    return simplex_unequal_throughput(alloc, cfg);
  case Scheme::full_duplex:
    return rate_only(kNaN);
  case Scheme::continuous_siso: {
    const auto dist = rayleigh_fading();
    return rate_only(broadcast_rate(optimal_power_density(cfg.p_s, dist), dist));
  }
  case Scheme::broadcast_relay:
    return rate_only(relay_or_miso_broadcast_bound(cfg, BroadcastBound::relay));
  case Scheme::broadcast_miso:
    return rate_only(relay_or_miso_broadcast_bound(cfg, BroadcastBound::miso));
  case Scheme::ergodic_miso:
    return rate_only(ergodic_miso_capacity(cfg.p_s, cfg.p_r));
  }
  throw std::logic_error("unhandled scheme");
}

Evaluation evaluate_scheme(Scheme s, PlanMode mode, const PointInput& in,
                           const OptimizerOptions& opts,
                           const std::optional<TwoLayerAllocation>& oblivious) {
  in.cfg.validate();
  Evaluation e;
  e.scheme = s;
  if (is_single_layer(s)) {
    switch (mode) {
    case PlanMode::fixed:
      e.rate = in.rate;
      break;
    case PlanMode::oblivious:
      e.rate = optimal_single_user_rate(in.cfg.p_s);
      break;
    case PlanMode::optimized:
      e.rate = best_single_rate(single_layer_curve(s, in.cfg), single_rate_upper(in.cfg));
      break;
    }
    e.result = closed_form(s, e.alloc, e.rate, in.cfg);
    return e;
  }
  if (!is_two_layer(s)) {
    e.result = closed_form(s, e.alloc, e.rate, in.cfg);
    return e;
  }

  TwoLayerAllocation plan = in.alloc;
  switch (mode) {
  case PlanMode::fixed:
    if (!is_unequal(s) || !in.beta_given) {
      plan = plan.with_equal_split();
    }
    break;
  case PlanMode::oblivious:
    plan = oblivious ? *oblivious : oblivious_rate_plan(in.cfg.p_s, 2, opts).params;
    plan = plan.with_equal_split();
    if (is_unequal(s)) {
      plan = maximize_throughput(objective_of(s), kBeta, plan, in.cfg, opts).params;
    }
    break;
  case PlanMode::optimized: {
    if (s == Scheme::full_duplex) {
      throw std::invalid_argument("full-duplex has no closed form to optimise; use --plan oblivious or fixed");
    }
    ParamSet free = kAlpha | kEta1 | kEta2;
    if (is_unequal(s)) {
      free |= kBeta;
    }
    plan = maximize_throughput(objective_of(s), free, plan.with_equal_split(), in.cfg, opts).params;
    if (!is_unequal(s)) {
      plan = plan.with_equal_split();
    }
    break;
  }
  }
  plan.validate();
  e.alloc = plan;
  e.result = closed_form(s, plan, e.rate, in.cfg);
  return e;
}

std::optional<SimConfig> simulation_for(const Evaluation& e, const PowerConfig& cfg) {
  SimConfig sim;
  switch (e.scheme) {
  case Scheme::single_layer_sdf:
    sim.strategy = Strategy::single_layer_sdf;
    sim.params = SingleLayerParams{e.rate};
    return sim;
  case Scheme::direct:
    sim.strategy = Strategy::direct;
    break;
  case Scheme::miso_equal:
    sim.strategy = Strategy::miso_equal;
    break;
  case Scheme::miso_unequal:
    sim.strategy = Strategy::miso_unequal;
    break;
  case Scheme::simplex_equal:
    sim.strategy = Strategy::simplex_equal;
    break;
  case Scheme::simplex_unequal:
    sim.strategy = Strategy::simplex_unequal;
    break;
  case Scheme::full_duplex:
    sim.strategy = Strategy::full_duplex;
    break;
  case Scheme::broadcast_relay:
    sim.strategy = Strategy::layered_continuous;
    sim.params = ContinuousParams{optimal_power_density(cfg.p_s, rayleigh_fading())};
    return sim;
  default:
    return std::nullopt;
  }
  sim.params = e.alloc;
  return sim;
}

} // namespace bcrelay::cli
