// SPDX-License-Identifier: Apache-2.0
#include "bcrelay/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "bcrelay/broadcast.hpp"
#include "bcrelay/numerics.hpp"
#include "bcrelay/outage.hpp"

namespace bcrelay {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

constexpr std::array<std::pair<Objective, std::string_view>, 5> kObjectiveNames{{
    {Objective::direct, "direct"},
    {Objective::miso_equal, "miso-equal"},
    {Objective::miso_unequal, "miso-unequal"},
    {Objective::simplex_equal, "simplex-equal"},
    {Objective::simplex_unequal, "simplex-unequal"},
}};

// Unit-cube parameterisation of the feasible box. Squared maps give the
// thresholds fine resolution near zero; eta2 is measured from eta1 and beta
// from alpha (when beta >= alpha is required), so every cube point is feasible.
struct Box {
  ParamSet free = 0;
  TwoLayerAllocation fixed;
  bool beta_at_least_alpha = false;
  double top = 1.0;
  std::vector<Param> coords;

  Box(ParamSet f, const TwoLayerAllocation& fx, bool ba, double eta_max)
      : free(f), fixed(fx), beta_at_least_alpha(ba) {
    top = std::max({eta_max, fx.eta1, fx.eta2});
    for (Param p : {kAlpha, kBeta, kEta1, kEta2}) {
      if (free & p) {
        coords.push_back(p);
      }
    }
  }

  bool has(Param p) const { return (free & p) != 0; }

  // Returns false when the fixed coordinates leave nothing feasible.
  bool decode(const std::vector<double>& z, TwoLayerAllocation& a) const {
    a = fixed;
    std::size_t i = 0;
    double z_alpha = 0.0, z_beta = 0.0, z_eta1 = 0.0, z_eta2 = 0.0;
    if (has(kAlpha)) z_alpha = z[i++];
    if (has(kBeta)) z_beta = z[i++];
    if (has(kEta1)) z_eta1 = z[i++];
    if (has(kEta2)) z_eta2 = z[i++];

    if (has(kAlpha)) {
      a.alpha = (beta_at_least_alpha && !has(kBeta)) ? z_alpha * fixed.beta : z_alpha;
    }
    if (has(kBeta)) {
      a.beta = beta_at_least_alpha ? a.alpha + (1.0 - a.alpha) * z_beta : z_beta;
    }
    if (beta_at_least_alpha && a.beta < a.alpha) {
      return false;
    }
    if (has(kEta1)) {
      a.eta1 = (has(kEta2) ? top : fixed.eta2) * z_eta1 * z_eta1;
    }
    if (has(kEta2)) {
      a.eta2 = a.eta1 + (top - a.eta1) * z_eta2 * z_eta2;
    }
    return a.eta1 <= a.eta2;
  }

  // Inverse of decode, clamped to the cube.
  std::vector<double> encode(const TwoLayerAllocation& a) const {
    const auto unit = [](double x) { return std::isfinite(x) ? std::clamp(x, 0.0, 1.0) : 0.0; };
    std::vector<double> z;
    const double alpha = (beta_at_least_alpha && !has(kBeta))
                             ? (fixed.beta > 0.0 ? a.alpha / fixed.beta : 0.0)
                             : a.alpha;
    if (has(kAlpha)) z.push_back(unit(alpha));
    if (has(kBeta)) {
      const double alpha_used = has(kAlpha) ? a.alpha : fixed.alpha;
      z.push_back(unit(beta_at_least_alpha
                           ? (alpha_used < 1.0 ? (a.beta - alpha_used) / (1.0 - alpha_used) : 0.0)
                           : a.beta));
    }
    if (has(kEta1)) {
      const double span = has(kEta2) ? top : fixed.eta2;
      z.push_back(span > 0.0 ? std::sqrt(unit(a.eta1 / span)) : 0.0);
    }
    if (has(kEta2)) {
      const double eta1 = has(kEta1) ? std::min(a.eta1, top) : fixed.eta1;
      z.push_back(top > eta1 ? std::sqrt(unit((a.eta2 - eta1) / (top - eta1))) : 0.0);
    }
    return z;
  }
};

struct Candidate {
  double value;
  std::size_t index;
  bool operator<(const Candidate& o) const {
    return value > o.value || (value == o.value && index < o.index);
  }
};

void keep_best(std::vector<Candidate>& top, const Candidate& c, std::size_t k) {
  if (top.size() == k && !(c < top.back())) {
    return;
  }
  top.insert(std::upper_bound(top.begin(), top.end(), c), c);
  if (top.size() > k) {
    top.pop_back();
  }
}

double default_eta_max(Objective o, const PowerConfig& cfg) {
  if (o == Objective::direct || !(cfg.p_s > 0.0)) {
    return 12.0;
  }
  return 12.0 * (1.0 + cfg.p_r / cfg.p_s);
}

} // namespace

std::string_view to_string(Objective o) noexcept {
  for (const auto& [k, name] : kObjectiveNames) {
    if (k == o) {
      return name;
    }
  }
  return "unknown";
}

Objective objective_from_string(std::string_view name) {
  for (const auto& [k, n] : kObjectiveNames) {
    if (n == name) {
      return k;
    }
  }
  throw std::invalid_argument("unknown objective '" + std::string(name) + "'");
}

double evaluate_objective(Objective o, const TwoLayerAllocation& alloc, const PowerConfig& cfg) {
  switch (o) {
  case Objective::direct:
    return direct_throughput(alloc, cfg.p_s).r_av;
  case Objective::miso_equal:
    return miso_equal_throughput(alloc, cfg.p_s, cfg.p_r).r_av;
  case Objective::miso_unequal:
    return miso_unequal_throughput(alloc, cfg.p_s, cfg.p_r).r_av;
  case Objective::simplex_equal:
    return simplex_equal_throughput(alloc, cfg).r_av;
  case Objective::simplex_unequal:
    return simplex_unequal_throughput(alloc, cfg).r_av;
  }
  throw std::invalid_argument("evaluate_objective: unknown objective");
}

OptimizationResult maximize_throughput(const std::function<double(const TwoLayerAllocation&)>& f,
                                       ParamSet free, const TwoLayerAllocation& fixed,
                                       bool beta_at_least_alpha, double eta_max,
                                       const OptimizerOptions& opts) {
  const Box box(free, fixed, beta_at_least_alpha, eta_max);
  const std::size_t dims = box.coords.size();
  const auto value_at = [&](const std::vector<double>& z) {
    TwoLayerAllocation a;
    if (!box.decode(z, a)) {
      return kNegInf;
    }
    try {
      const double v = f(a);
      return std::isnan(v) ? kNegInf : v;
    } catch (const std::invalid_argument&) {
      return kNegInf;
    }
  };

  OptimizationResult out;
  const std::size_t g = std::max<std::size_t>(opts.grid_points, 2);
  std::size_t total = 1;
  for (std::size_t d = 0; d < dims; ++d) {
    total *= g;
  }
  const auto grid_point = [&](std::size_t index) {
    std::vector<double> z(dims);
    for (std::size_t d = dims; d-- > 0;) {
      z[d] = static_cast<double>(index % g) / static_cast<double>(g - 1);
      index /= g;
    }
    return z;
  };

  // Grid phase: contiguous index ranges per worker, merged in range order.
  const std::size_t k = std::max<std::size_t>(opts.starts, 1);
  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::size_t>(opts.workers, 1, std::max<std::size_t>(total / 64, 1)));
  std::vector<std::vector<Candidate>> local(workers);
  const auto scan = [&](unsigned w) {
    const std::size_t begin = total * w / workers;
    const std::size_t end = total * (w + 1) / workers;
    for (std::size_t i = begin; i < end; ++i) {
      keep_best(local[w], {value_at(grid_point(i)), i}, k);
    }
  };
  if (workers == 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back(scan, w);
    }
    for (auto& t : pool) {
      t.join();
    }
  }
  std::vector<Candidate> best_grid;
  for (const auto& l : local) {
    for (const auto& c : l) {
      keep_best(best_grid, c, k);
    }
  }
  out.evaluations = total;

  struct Start {
    std::vector<double> z;
    double value;
  };
  std::vector<Start> starts;
  for (const auto& c : best_grid) {
    starts.push_back({grid_point(c.index), c.value});
  }
  std::vector<double> best_z = starts.front().z;
  double best = starts.front().value;
  for (const auto& seed : opts.seeds) {
    auto z = box.encode(seed);
    const double v = value_at(z);
    ++out.evaluations;
    starts.push_back({z, v});
    if (v > best) {
      best = v;
      best_z = z;
    }
  }
  out.trace.push_back(best);

  if (dims > 0 && std::isfinite(best)) {
    const double tol = std::max(opts.param_tol, 1e-12);
    for (const auto& start : starts) {
      if (!std::isfinite(start.value)) {
        continue;
      }
      std::vector<double> z = start.z;
      double val = start.value;
      double h = 1.0 / static_cast<double>(g - 1);
      for (int pass = 0; pass < 400 && h >= tol; ++pass) {
        bool moved = false;
        for (std::size_t d = 0; d < dims; ++d) {
          const double lo = std::max(0.0, z[d] - h);
          const double hi = std::min(1.0, z[d] + h);
          auto trial = z;
          const auto ext = numerics::golden_section_maximize(
              [&](double x) {
                trial[d] = x;
                ++out.evaluations;
                return value_at(trial);
              },
              lo, hi, std::max(0.5 * tol, 1e-3 * h));
          if (ext.value > val) {
            moved = moved || ext.value - val > 1e-13 * std::max(1.0, std::abs(val));
            z[d] = ext.x;
            val = ext.value;
          }
        }
        if (val > best) {
          best = val;
          best_z = z;
        }
        out.trace.push_back(best);
        if (!moved) {
          h *= 0.5;
        }
      }
    }
  }

  box.decode(best_z, out.params);
  out.value = best;
  return out;
}

OptimizationResult maximize_throughput(Objective objective, ParamSet free,
                                       const TwoLayerAllocation& fixed, const PowerConfig& cfg,
                                       const OptimizerOptions& opts) {
  const double eta_max = opts.eta_max > 0.0 ? opts.eta_max : default_eta_max(objective, cfg);
  OptimizerOptions o = opts;
  const bool unequal = objective == Objective::miso_unequal || objective == Objective::simplex_unequal;
  if (unequal && (free & kBeta)) {
    // Coordinate moves cannot follow the alpha = beta ridge, so start one
    // refinement on it.
    const Objective equal =
        objective == Objective::miso_unequal ? Objective::miso_equal : Objective::simplex_equal;
    TwoLayerAllocation seed = fixed;
    if (free & ~kBeta) {
      seed = maximize_throughput(equal, free & ~kBeta, fixed, cfg, opts).params;
    }
    o.seeds.push_back(seed.with_equal_split());
  }
  auto res = maximize_throughput(
      [&](const TwoLayerAllocation& a) { return evaluate_objective(objective, a, cfg); }, free,
      fixed, objective == Objective::simplex_unequal, eta_max, o);
  const auto rates = layer_rates(res.params, cfg.p_s);
  res.rate_ordering_holds = rates.r1 > rates.r2;
  return res;
}

OptimizationResult oblivious_rate_plan(double p_s, int n_layers, const OptimizerOptions& opts) {
  if (!(p_s > 0.0)) {
    throw std::invalid_argument("oblivious_rate_plan: p_s must be positive");
  }
  if (n_layers == 1) {
    const double r = optimal_single_user_rate(p_s);
    const double eta = std::expm1(r) / p_s;
    OptimizationResult out;
    out.params = {1.0, 1.0, eta, eta};
    out.value = single_user_throughput(r, p_s).r_av;
    out.trace = {out.value};
    out.evaluations = 0;
    out.rate_ordering_holds = true;
    return out;
  }
  if (n_layers != 2) {
    throw std::invalid_argument("oblivious_rate_plan: n_layers must be 1 or 2");
  }
  const PowerConfig cfg{p_s, 0.0, 0.0};
  return maximize_throughput(Objective::direct, kAlpha | kEta1 | kEta2, TwoLayerAllocation{}, cfg,
                             opts);
}

namespace {

struct PlanState {
  std::vector<double> eta;
  std::vector<double> rest; // power fraction above layer i; rest.back() == 0

  LayerPlan plan() const {
    LayerPlan p;
    p.thresholds = eta;
    p.fractions.resize(eta.size());
    double above = 1.0;
    for (std::size_t i = 0; i < eta.size(); ++i) {
      p.fractions[i] = std::max(0.0, above - rest[i]);
      above = rest[i];
    }
    // absorb rounding so the fractions sum to one exactly enough
    double sum = 0.0;
    for (double f : p.fractions) {
      sum += f;
    }
    if (sum > 0.0) {
      for (double& f : p.fractions) {
        f /= sum;
      }
    }
    return p;
  }
};

} // namespace

LayerPlanResult optimize_layer_plan(double p_s, double p_r, std::size_t n_layers,
                                    const OptimizerOptions& opts) {
  if (!(p_s > 0.0) || n_layers == 0) {
    throw std::invalid_argument("optimize_layer_plan: need p_s > 0 and at least one layer");
  }
  const bool relay = p_r > 0.0;
  const double top = opts.eta_max > 0.0 ? opts.eta_max : 12.0 * (1.0 + p_r / p_s);
  const auto tail = [=](double eta) {
    return relay ? y_sum_tail(eta * p_s, p_s, p_r) : std::exp(-eta);
  };
  const auto score = [&](const PlanState& st) {
    const auto plan = st.plan();
    const auto rates = multilayer_rates(plan, p_s);
    double v = 0.0;
    for (std::size_t i = 0; i < rates.size(); ++i) {
      v += rates[i] * tail(plan.thresholds[i]);
    }
    return v;
  };

  LayerPlanResult out;
  PlanState best;
  if (n_layers == 1) {
    const auto ext = numerics::golden_section_maximize(
        [&](double eta) { return std::log1p(eta * p_s) * tail(eta); }, 0.0, top, 1e-10);
    out.plan = LayerPlan{{ext.x}, {1.0}};
    out.value = ext.value;
    out.two_layer_start = ext.value;
    out.continuous_start = ext.value;
    return out;
  }

  // Two-layer start, padded with empty layers at the top threshold.
  const PowerConfig cfg{p_s, p_r, 0.0};
  const auto two = maximize_throughput(relay ? Objective::miso_equal : Objective::direct,
                                       kAlpha | kEta1 | kEta2, TwoLayerAllocation{}, cfg, opts);
  PlanState from_two;
  from_two.eta.assign(n_layers, two.params.eta2);
  from_two.eta[0] = two.params.eta1;
  from_two.rest.assign(n_layers, 0.0);
  from_two.rest[0] = two.params.alpha_bar();
  out.two_layer_start = score(from_two);

  // Discretised continuous layering: layer i spans [b_i, b_{i+1}].
  PlanState from_cont;
  out.continuous_start = kNegInf;
  try {
    const auto dist = relay ? sum_fading_distribution(p_r / p_s) : rayleigh_fading();
    const auto pd = optimal_power_density(p_s, dist);
    from_cont.eta.resize(n_layers);
    from_cont.rest.resize(n_layers);
    for (std::size_t i = 0; i < n_layers; ++i) {
      const double b = pd.u0 + (pd.u1 - pd.u0) * static_cast<double>(i + 1) / n_layers;
      from_cont.eta[i] = b;
      from_cont.rest[i] = i + 1 == n_layers ? 0.0 : pd.residual(b) / p_s;
    }
    out.continuous_start = score(from_cont);
  } catch (const std::exception&) {
    // no usable continuous start; the two-layer start alone is refined
  }

  best = out.continuous_start > out.two_layer_start ? from_cont : from_two;
  double val = score(best);

  for (int pass = 0; pass < 300; ++pass) {
    const double before = val;
    for (std::size_t i = 0; i < n_layers; ++i) {
      const double lo = i == 0 ? 0.0 : best.eta[i - 1];
      const double hi = i + 1 == n_layers ? top : best.eta[i + 1];
      PlanState trial = best;
      const auto ext = numerics::golden_section_maximize(
          [&](double x) {
            trial.eta[i] = x;
            return score(trial);
          },
          lo, hi, 1e-9 * std::max(1.0, hi));
      if (ext.value > val) {
        best.eta[i] = ext.x;
        val = ext.value;
      }
    }
    for (std::size_t i = 0; i + 1 < n_layers; ++i) {
      const double lo = best.rest[i + 1];
      const double hi = i == 0 ? 1.0 : best.rest[i - 1];
      PlanState trial = best;
      const auto ext = numerics::golden_section_maximize(
          [&](double x) {
            trial.rest[i] = x;
            return score(trial);
          },
          lo, hi, 1e-10);
      if (ext.value > val) {
        best.rest[i] = ext.x;
        val = ext.value;
      }
    }
    if (val - before < 1e-12) {
      break;
    }
  }
  out.plan = best.plan();
  out.value = val;
  return out;
}

double horizontal_gain_db(const std::vector<double>& x_db, const std::vector<double>& reference,
                          const std::vector<double>& curve, double at_db) {
  const std::size_t n = x_db.size();
  if (n < 2 || reference.size() != n || curve.size() != n) {
    throw std::invalid_argument("horizontal_gain_db: curves must share a grid of >= 2 points");
  }
  if (at_db < x_db.front() || at_db > x_db.back()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  std::size_t j = 0;
  while (j + 2 < n && x_db[j + 1] < at_db) {
    ++j;
  }
  const double w = (at_db - x_db[j]) / (x_db[j + 1] - x_db[j]);
  const double y = curve[j] + w * (curve[j + 1] - curve[j]);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = reference[i];
    const double b = reference[i + 1];
    if ((a <= y && y <= b) || (b <= y && y <= a)) {
      const double t = b == a ? 0.0 : (y - a) / (b - a);
      return x_db[i] + t * (x_db[i + 1] - x_db[i]) - at_db;
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

} // namespace bcrelay
