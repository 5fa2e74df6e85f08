// SPDX-License-Identifier: Apache-2.0
#include "figures.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

#include <bcrelay/broadcast.hpp>
#include <bcrelay/monte_carlo.hpp>
#include <bcrelay/outage.hpp>
#include <bcrelay/two_layer.hpp>

#include "grid.hpp"
#include "schemes.hpp"

namespace bcrelay::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> range(double lo, double hi, double step) {
  std::vector<double> v;
  for (int i = 0; lo + i * step <= hi + 1e-9; ++i) {
    v.push_back(lo + i * step);
  }
  return v;
}

std::vector<double> ratios_from_db(const std::vector<double>& db) {
  std::vector<double> v;
  for (double x : db) {
    v.push_back(from_db(x));
  }
  return v;
}

struct Point {
  double ps_db;
  double q_db;
  double ratio;

  PowerConfig power() const {
    const double p = from_db(ps_db);
    return {p, ratio * p, std::isfinite(q_db) ? from_db(q_db) : 0.0};
  }
};

struct Curve {
  std::string label;
  double value;
  double std_error = 0.0;
};

/// Shared per-run state: source plans keyed by ps_db.
struct Context {
  const FigureOptions& opts;
  std::map<double, TwoLayerAllocation> oblivious;
};

using CurveFn = std::function<std::vector<Curve>(const Point&, const Context&)>;

double siso_single(double p) { return single_user_throughput(optimal_single_user_rate(p), p).r_av; }

double continuous_siso(double p) {
  const auto d = rayleigh_fading();
  return broadcast_rate(optimal_power_density(p, d), d);
}

double miso_single(const PowerConfig& c) {
  const auto f = [&](double r) { return miso_single_layer_throughput(r, c.p_s, c.p_r).r_av; };
  const double r = best_single_rate(f, std::log1p(50.0 * (c.p_s + c.p_r)) + 1.0);
  return f(r);
}

std::vector<Curve> fig2(const Point& pt, const Context&) {
  const auto c = pt.power();
  return {
      {"single-layer", siso_single(c.p_s)},
      {"single-layer-miso", miso_single(c)},
      {"continuous-siso", continuous_siso(c.p_s)},
      {"broadcast-relay", relay_or_miso_broadcast_bound(c, BroadcastBound::relay)},
      {"broadcast-miso", relay_or_miso_broadcast_bound(c, BroadcastBound::miso)},
  };
}

std::vector<Curve> fig3(const Point& pt, const Context& ctx) {
  const auto c = pt.power();
  const auto& o = ctx.opts.optimizer;
  return {
      {"direct-1", siso_single(c.p_s)},
      {"direct-2", oblivious_rate_plan(c.p_s, 2, o).value},
      {"direct-8", optimize_layer_plan(c.p_s, 0.0, 8, o).value},
      {"continuous-siso", continuous_siso(c.p_s)},
      {"miso-1", optimize_layer_plan(c.p_s, c.p_r, 1, o).value},
      {"miso-2", optimize_layer_plan(c.p_s, c.p_r, 2, o).value},
      {"miso-8", optimize_layer_plan(c.p_s, c.p_r, 8, o).value},
      {"broadcast-miso", relay_or_miso_broadcast_bound(c, BroadcastBound::miso)},
  };
}

std::vector<Curve> fig4(const Point& pt, const Context& ctx) {
  const auto c = pt.power();
  const auto& o = ctx.opts.optimizer;
  const PointInput in{c, {}, false, 1.0};
  return {
      {"miso-equal", evaluate_scheme(Scheme::miso_equal, PlanMode::optimized, in, o).result.r_av},
      {"miso-unequal", evaluate_scheme(Scheme::miso_unequal, PlanMode::optimized, in, o).result.r_av},
      {"miso-1", optimize_layer_plan(c.p_s, c.p_r, 1, o).value},
      {"miso-8", optimize_layer_plan(c.p_s, c.p_r, 8, o).value},
      {"broadcast-miso", relay_or_miso_broadcast_bound(c, BroadcastBound::miso)},
      {"ergodic-miso", ergodic_miso_capacity(c.p_s, c.p_r)},
  };
}

std::vector<Curve> fig5(const Point& pt, const Context& ctx) {
  const auto c = pt.power();
  const auto& o = ctx.opts.optimizer;
  const PointInput in{c, {}, false, 1.0};
  return {
      {"miso-equal", evaluate_scheme(Scheme::miso_equal, PlanMode::optimized, in, o).result.r_av},
      {"miso-unequal", evaluate_scheme(Scheme::miso_unequal, PlanMode::optimized, in, o).result.r_av},
  };
}

Evaluation oblivious_eval(Scheme s, const Point& pt, const Context& ctx) {
  const PointInput in{pt.power(), {}, false, 1.0};
  return evaluate_scheme(s, PlanMode::oblivious, in, ctx.opts.optimizer, ctx.oblivious.at(pt.ps_db));
}

std::vector<Curve> fig6(const Point& pt, const Context& ctx) {
  return {
      {"direct", oblivious_eval(Scheme::direct, pt, ctx).result.r_av},
      {"simplex-equal", oblivious_eval(Scheme::simplex_equal, pt, ctx).result.r_av},
      {"miso-equal", oblivious_eval(Scheme::miso_equal, pt, ctx).result.r_av},
  };
}

std::vector<Curve> fig7(const Point& pt, const Context& ctx) {
  return {
      {"direct", oblivious_eval(Scheme::direct, pt, ctx).result.r_av},
      {"simplex-equal", oblivious_eval(Scheme::simplex_equal, pt, ctx).result.r_av},
  };
}

std::vector<Curve> fig8(const Point& pt, const Context& ctx) {
  return {
      {"direct", oblivious_eval(Scheme::direct, pt, ctx).result.r_av},
      {"simplex-equal", oblivious_eval(Scheme::simplex_equal, pt, ctx).result.r_av},
      {"simplex-unequal", oblivious_eval(Scheme::simplex_unequal, pt, ctx).result.r_av},
      {"miso-unequal", oblivious_eval(Scheme::miso_unequal, pt, ctx).result.r_av},
  };
}

std::vector<Curve> fig9(const Point& pt, const Context& ctx) {
  const auto c = pt.power();
  const auto e = oblivious_eval(Scheme::simplex_equal, pt, ctx);
  std::vector<Curve> out{{"simplex-equal", e.result.r_av}};
  for (const auto& [label, strategy] : {std::pair{"simplex-equal-mc", Strategy::simplex_equal},
                                       std::pair{"full-duplex-mc", Strategy::full_duplex}}) {
    SimConfig sim;
    sim.blocks = ctx.opts.blocks;
    sim.seed = ctx.opts.seed;
    sim.strategy = strategy;
    sim.params = e.alloc;
    sim.workers = 1; // points already run in parallel
    const auto est = simulate_strategy(sim, c);
    out.push_back({label, est.mean, est.std_error});
  }
  return out;
}

struct PresetImpl {
  FigurePreset preset;
  CurveFn curves;
  bool needs_oblivious = false;
};

const std::vector<PresetImpl>& registry() {
  static const std::vector<PresetImpl> r{
      {{"fig2", "continuous broadcasting and single-layer rates vs P_s for several P_r/P_s",
        {range(-5, 30, 2.5), {kInf}, {0.5, 1.0, 2.0}}, false},
       fig2},
      {{"fig3", "SISO 1/2/8-layer and continuous rates with their MISO counterparts (P_r = P_s)",
        {range(-5, 30, 2.5), {kInf}, {1.0}}, false},
       fig3},
      {{"fig4", "optimised two-layer MISO, equal and unequal splits, vs P_s",
        {range(-5, 30, 2.5), {kInf}, {0.1, 1.0, 10.0}}, false},
       fig4},
      {{"fig5", "optimised two-layer MISO vs P_r at P_s = 40 dB",
        {{40.0}, {kInf}, ratios_from_db(range(-40, 20, 5))}, false},
       fig5},
      {{"fig6", "oblivious simplex SDF, equal split, vs P_s for several Q and P_r/P_s",
        {range(0, 30, 2.5), {10.0, 20.0, 30.0}, {0.5, 1.0, 2.0}}, false},
       fig6, true},
      {{"fig7", "oblivious simplex SDF, equal split, vs P_r/P_s at P_s = 10 and 20 dB",
        {{10.0, 20.0}, {10.0, 20.0, 30.0}, ratios_from_db(range(-10, 20, 2.5))}, false},
       fig7, true},
      {{"fig8", "oblivious simplex SDF with the relay's split optimised, P_r = P_s",
        {range(0, 30, 2.5), {10.0, 20.0, 30.0}, {1.0}}, false},
       fig8, true},
      {{"fig9", "full-duplex vs simplex relay, equal split, Monte-Carlo, P_r = P_s",
        {range(0, 30, 5), {0.0, 10.0, 20.0}, {1.0}}, true},
       fig9, true},
  };
  return r;
}

const PresetImpl& impl_of(const std::string& name) {
  for (const auto& p : registry()) {
    if (p.preset.name == name) {
      return p;
    }
  }
  std::string known;
  for (const auto& p : registry()) {
    known += (known.empty() ? "" : ", ") + p.preset.name;
  }
  throw std::invalid_argument("unknown figure preset '" + name + "' (known: " + known + ")");
}

} // namespace

const std::vector<FigurePreset>& figure_presets() {
  static const std::vector<FigurePreset> v = [] {
    std::vector<FigurePreset> out;
    for (const auto& p : registry()) {
      out.push_back(p.preset);
    }
    return out;
  }();
  return v;
}

const FigurePreset& find_preset(const std::string& name) { return impl_of(name).preset; }

FigureGrid resolve_grid(const FigurePreset& preset, const FigureOptions& opts) {
  FigureGrid g = preset.defaults;
  if (opts.ps_db) {
    g.ps_db = *opts.ps_db;
  }
  if (opts.q_db) {
    g.q_db = *opts.q_db;
  }
  if (opts.pr_over_ps) {
    g.pr_over_ps = *opts.pr_over_ps;
  }
  for (double r : g.pr_over_ps) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      throw std::invalid_argument("invalid grid: P_r/P_s ratios must be finite and >= 0");
    }
  }
  if (g.ps_db.empty() || g.q_db.empty() || g.pr_over_ps.empty()) {
    throw std::invalid_argument("invalid grid: empty axis");
  }
  return g;
}

Table run_figure(const FigurePreset& preset, const FigureOptions& opts) {
  const auto& impl = impl_of(preset.name);
  const FigureGrid g = resolve_grid(preset, opts);

  Context ctx{opts, {}};
  if (impl.needs_oblivious) {
    const auto plans = parallel_map(g.ps_db.size(), opts.workers, [&](std::size_t i) {
      return oblivious_rate_plan(from_db(g.ps_db[i]), 2, opts.optimizer).params;
    });
    for (std::size_t i = 0; i < plans.size(); ++i) {
      ctx.oblivious.emplace(g.ps_db[i], plans[i]);
    }
  }

  std::vector<Point> points;
  for (double ps : g.ps_db) {
    for (double q : g.q_db) {
      for (double r : g.pr_over_ps) {
        points.push_back({ps, q, r});
      }
    }
  }
  const auto results = parallel_map(points.size(), opts.workers,
                                    [&](std::size_t i) { return impl.curves(points[i], ctx); });

  const double scale = opts.bits ? 1.0 / std::numbers::ln2 : 1.0;
  std::vector<std::string> cols{"ps_db", "q_db", "pr_over_ps", "scheme",
                                opts.bits ? "throughput_bits" : "throughput_nats"};
  if (preset.monte_carlo) {
    cols.emplace_back("std_error");
  }
  Table t(cols);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (const auto& c : results[i]) {
      std::vector<Cell> row{points[i].ps_db, points[i].q_db, points[i].ratio, c.label,
                            c.value * scale};
      if (preset.monte_carlo) {
        row.emplace_back(c.std_error * scale);
      }
      t.add_row(std::move(row));
    }
  }
  return t;
}

std::string plot_script(const FigurePreset& preset, const std::string& csv_name, bool bits) {
  const std::string unit = bits ? "bits" : "nats";
  std::string s;
  s += "# gnuplot stub for " + preset.name + ": " + preset.summary + "\n";
  s += "set datafile separator ','\n";
  s += "set key autotitle columnhead\n";
  s += "set xlabel 'P_s [dB]'\nset ylabel 'throughput [" + unit + "/channel use]'\n";
  s += "# one curve per (scheme, q_db, pr_over_ps); filter with awk or pandas as needed\n";
  s += "plot '" + csv_name + "' using 1:5 with points\n";
  return s;
}

} // namespace bcrelay::cli
