// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one PASS/FAIL line per criterion, with the measured
// numbers behind each verdict. Exit status 1 if any criterion fails.
// Usage: bcrelay_acceptance [criterion ...]   (default: all)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bcrelay/bounds.hpp"
#include "bcrelay/broadcast.hpp"
#include "bcrelay/dmt.hpp"
#include "bcrelay/monte_carlo.hpp"
#include "bcrelay/optimizer.hpp"
#include "bcrelay/outage.hpp"
#include "bcrelay/two_layer.hpp"
#include "bound_properties.hpp"
#include "grid.hpp"
#include "validation.hpp"

namespace {

using namespace bcrelay;
using cli::from_db;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

std::vector<double> db_grid(double lo, double hi, double step) {
  std::vector<double> g;
  for (int i = 0; lo + i * step <= hi + 1e-9; ++i) {
    g.push_back(lo + i * step);
  }
  return g;
}

// 1. Closed forms against simulation on the pinned corpus.
Verdict oracle_equivalence() {
  const auto corpus = cli::validation_corpus(50, 7);
  const auto rows = cli::run_validation(corpus, 1'000'000, 3.0, workers());
  int bad = 0;
  double worst = 0.0;
  std::string first;
  for (const auto& r : rows) {
    worst = std::max(worst, std::abs(r.z));
    if (!r.pass) {
      if (bad++ == 0) {
        first = fmt(" first: %s draw %d z=%.2f", std::string(cli::to_string(r.point.scheme)).c_str(),
                    r.point.draw, r.z);
      }
    }
  }
  return {bad == 0, fmt("%zu points, %d outside 3 sigma, max |z| = %.2f", rows.size(), bad, worst) + first};
}

// 2. Which reading of the no-relay branch the simulation supports.
Verdict eq3_convention() {
  const double r = 1.0;
  const PowerConfig cfg{10.0, 10.0, 0.01};
  SimConfig sim;
  sim.blocks = 1'000'000;
  sim.seed = 7;
  sim.strategy = Strategy::single_layer_sdf;
  sim.params = SingleLayerParams{r};
  const SimEstimate mc = simulate_strategy(sim, cfg);
  const double adopted = sdf_single_layer_throughput(r, cfg).r_av;
  const double literal = r * std::exp(-r / cfg.p_s);
  const double z_adopted = (mc.mean - adopted) / mc.std_error;
  const double z_literal = (mc.mean - literal) / mc.std_error;
  return {std::abs(z_adopted) <= 3.0 && std::abs(z_literal) > 10.0,
          fmt("mc %.6f +- %.6f; exp(-(e^R-1)/P_s): %.6f (z=%.2f); exp(-R/P_s): %.6f (z=%.1f)", mc.mean,
              mc.std_error, adopted, z_adopted, literal, z_literal)};
}

// 3. Share of the single-layer to continuous gap closed by two layers.
Verdict fig3_gap() {
  bool ok = true;
  std::string d;
  double worst = 1.0;
  for (double db : db_grid(0.0, 25.0, 2.5)) {
    const double p = from_db(db);
    const double cont = broadcast_rate(optimal_power_density(p, rayleigh_fading()), rayleigh_fading());
    const double single = single_user_throughput(optimal_single_user_rate(p), p).r_av;
    const double two = oblivious_rate_plan(p, 2).value;
    const double frac = (two - single) / (cont - single);
    worst = std::min(worst, frac);
    ok = ok && frac >= 0.70;
    d += fmt(" %g:%.3f", db, frac);
  }
  return {ok, fmt("min fraction %.3f (need >= 0.70); by P_s dB:", worst) + d};
}

// 4. Horizontal gain of the oblivious simplex relay over direct transmission.
Verdict fig6_gain() {
  const std::vector<double> x = db_grid(-10.0, 30.0, 1.0);
  const auto plans = cli::parallel_map(x.size(), workers(), [&](std::size_t i) {
    return oblivious_rate_plan(from_db(x[i]), 2);
  });
  bool ok = true;
  std::string d;
  for (double q_db : {15.0, 20.0, 30.0}) {
    std::vector<double> direct;
    std::vector<double> simplex;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double p = from_db(x[i]);
      direct.push_back(plans[i].value);
      simplex.push_back(simplex_equal_throughput(plans[i].params, {p, p, from_db(q_db)}).r_av);
    }
    std::vector<double> g;
    for (double at : {0.0, 2.5, 5.0, 10.0, 20.0}) {
      g.push_back(horizontal_gain_db(x, direct, simplex, at));
    }
    for (std::size_t k = 0; k < 3; ++k) {
      ok = ok && std::abs(g[k] - 2.0) <= 1.0;
    }
    ok = ok && g[0] >= g[2] && g[2] >= g[3] && g[3] >= g[4];
    d += fmt(" Q=%gdB: %.2f/%.2f/%.2f/%.2f/%.2f", q_db, g[0], g[1], g[2], g[3], g[4]);
  }
  return {ok, "gain dB at P_s = 0/2.5/5/10/20 dB (need 2+-1 on 0..5, decreasing):" + d};
}

// 5. Gain of the relay's own split over reusing the source's.
Verdict fig8_gain() {
  const std::vector<double> x = db_grid(0.0, 25.0, 2.5);
  const double q = from_db(20.0);
  OptimizerOptions opts;
  opts.grid_points = 32;
  const auto rows = cli::parallel_map(x.size(), workers(), [&](std::size_t i) {
    const double p = from_db(x[i]);
    const PowerConfig cfg{p, p, q};
    const TwoLayerAllocation plan = oblivious_rate_plan(p, 2).params;
    const double eq = simplex_equal_throughput(plan, cfg).r_av;
    const double un = maximize_throughput(Objective::simplex_unequal, kBeta, plan, cfg, opts).value;
    return std::pair{eq, un};
  });
  std::vector<double> eq;
  std::vector<double> un;
  for (const auto& [e, u] : rows) {
    eq.push_back(e);
    un.push_back(u);
  }
  bool ok = true;
  std::string d;
  for (double at : {5.0, 10.0, 15.0}) {
    const double g = horizontal_gain_db(x, eq, un, at);
    ok = ok && std::abs(g - 0.4) <= 0.3;
    d += fmt(" %g:%.3f", at, g);
  }
  return {ok, "gain dB at mid-SNR P_s (need 0.4+-0.3):" + d};
}

// 6. No unequal-split MISO plan with n, k >= 1 beats the n = k = 1 value.
Verdict miso_dominance() {
  int feasible = 0;
  double worst = -INFINITY;
  for (const auto& [p_s, p_r] : {std::pair{10.0, 10.0}, {10.0, 3.0}, {3.0, 10.0}, {100.0, 100.0}}) {
    for (int i = 0; i < 20; ++i) {
      for (int j = 0; j < 20; ++j) {
        for (int k = 0; k < 20; ++k) {
          const TwoLayerAllocation a{0.025 + 0.05 * i, 0.025 + 0.05 * j, 0.05 + 0.1 * k,
                                     0.05 + 0.1 * k + 1.5};
          const MisoSlopes s = miso_slopes(a, p_s, p_r);
          if (s.n < 1.0 || s.k < 1.0) {
            continue;
          }
          ++feasible;
          worst = std::max(worst, miso_unequal_throughput(a, p_s, p_r).r_av -
                                      miso_unequal_upper_bound(a, p_s));
        }
      }
    }
  }
  return {feasible > 0 && worst <= 1e-9,
          fmt("%d feasible points on four 20^3 grids, max excess %.3g", feasible, worst)};
}

// 7. A much stronger relay drives the optimal splits together.
Verdict strong_relay_split() {
  OptimizerOptions opts;
  opts.workers = workers();
  std::string d;
  bool ok = false;
  for (double ps_db : {0.0, -10.0, 10.0}) {
    const double p = from_db(ps_db);
    const PowerConfig cfg{p, 1000.0 * p, 0.0};
    const auto r = maximize_throughput(Objective::miso_unequal, kAlpha | kBeta | kEta1 | kEta2,
                                       {0.5, 0.5, 0.5, 1.5}, cfg, opts);
    const double gap = std::abs(r.params.alpha - r.params.beta);
    if (ps_db == 0.0) {
      ok = gap < 0.02;
    }
    d += fmt(" P_s=%gdB:|a-b|=%.4f", ps_db, gap);
  }
  return {ok, "P_s/P_r = 1e-3, pinned at P_s = 0 dB (need < 0.02);" + d};
}

// 8. Outage exponents and the equal-allocation row.
Verdict dmt() {
  bool ok = true;
  std::string d;
  double worst1 = 0.0;
  double worst2 = 0.0;
  double edge = 0.0;
  for (double a : {0.6, 0.8, 0.9}) {
    for (double r1 : {0.0, 0.05}) {
      for (double r2 : {0.1, 0.3, 0.5}) {
        if (r2 >= a || 1.0 - r1 - a <= 0.0) {
          continue;
        }
        DmtConfig c;
        c.alpha_exp = c.beta_exp = a;
        c.r1 = r1;
        c.r2 = r2;
        const DmtExponents e = dmt_outage_exponents(c);
        const double err1 = std::abs(e.d1 - 2.0 * (1.0 - r1));
        const double err2 = std::abs(e.d2 - 2.0 * (a - r2));
        // Finite-SNR error decays like P^-margin; with a margin under 0.1 the
        // 40-80 dB window cannot resolve the slope, so those are only reported.
        if (std::min(1.0 - r1 - a, a - r2) < 0.1 - 1e-12) {
          edge = std::max({edge, err1, err2});
          continue;
        }
        worst1 = std::max(worst1, err1);
        worst2 = std::max(worst2, err2);
      }
    }
  }
  ok = worst1 <= 0.1 && worst2 <= 0.1;
  int points = 0;
  int dominated = 0;
  for (double lead : {0.3, 0.5, 0.7}) {
    for (double r1 : {0.05, 0.2}) {
      for (double r2 : {0.1, 0.25}) {
        for (double c : {0.5, 1.0, 2.0}) {
          for (double db : {40.0, 60.0, 80.0}) {
            DmtConfig cfg;
            cfg.alpha_exp = cfg.beta_exp = lead;
            cfg.r1 = r1;
            cfg.r2 = r2;
            cfg.c = c;
            const double p = from_db(db);
            const double eq = dmt_average_rate(cfg, p, DmtRow::equal);
            ++points;
            if (eq >= dmt_average_rate(cfg, p, DmtRow::alpha_dominant) &&
                eq >= dmt_average_rate(cfg, p, DmtRow::beta_dominant)) {
              ++dominated;
            }
          }
        }
      }
    }
  }
  ok = ok && dominated == points;
  d = fmt("max |d1 - 2(1-r1)| = %.3f, max |d2 - 2(a-r2)| = %.3f (margin >= 0.1); "
          "edge error %.3f (margin 0.05, not asserted); equal row dominates at %d/%d points",
          worst1, worst2, edge, dominated, points);
  return {ok, d};
}

// 9. Threshold-function properties on random draws.
Verdict threshold_properties() {
  const auto found = cli::parallel_map(100, workers(), [](std::size_t i) {
    return bcrelay::testing::check_bound_properties(bcrelay::testing::draw_bound_params(7, i), 1000);
  });
  std::size_t bad = 0;
  std::size_t draws_bad = 0;
  std::string first;
  for (const auto& v : found) {
    bad += v.size();
    draws_bad += v.empty() ? 0 : 1;
    if (first.empty() && !v.empty()) {
      first = " first: " + v.front();
    }
  }
  return {bad == 0, fmt("100 draws x 1000-point grids: %zu violations in %zu draws", bad, draws_bad) + first};
}

// 10. Optimal layering boundaries, quadrature and the relay bounds.
Verdict continuous_broadcast() {
  const PowerDensity pd = optimal_power_density(1.0, rayleigh_fading());
  const double res0 = std::abs(pd.residual(pd.u0) - 1.0);
  const double res1 = std::abs(pd.residual(pd.u1));
  const bool bounds_ok = std::abs(pd.u1 - 1.0) < 1e-10 &&
                         std::abs(pd.u0 - (std::sqrt(5.0) - 1.0) / 2.0) < 1e-10 && res0 < 1e-10 &&
                         res1 < 1e-10;

  const double p = 10.0;
  const double u0 = (-1.0 + std::sqrt(1.0 + 4.0 * p)) / (2.0 * p);
  const int panels = 1'000'000;
  const double h = (1.0 - u0) / panels;
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double u = u0 + (i + 0.5) * h;
    sum += std::exp(-u) * (2.0 / u - 1.0);
  }
  const double siso = broadcast_rate(optimal_power_density(p, rayleigh_fading()), rayleigh_fading());
  const double quad_err = std::abs(siso - sum * h);

  bool monotone = true;
  double collapse = 0.0;
  for (auto mode : {BroadcastBound::relay, BroadcastBound::miso}) {
    double prev = -1.0;
    for (double ratio : {0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
      const double v = relay_or_miso_broadcast_bound({p, p * ratio, 1.0}, mode);
      monotone = monotone && v >= prev - 1e-9;
      prev = v;
    }
    collapse = std::max(collapse, std::abs(relay_or_miso_broadcast_bound({p, 1e-9, 1.0}, mode) - siso));
  }
  return {bounds_ok && quad_err < 1e-6 && monotone && collapse < 1e-6,
          fmt("u0=%.12f u1=%.12f residuals %.1e/%.1e; quadrature vs Riemann %.1e; monotone=%s; "
              "P_r->0 gap %.1e",
              pd.u0, pd.u1, res0, res1, quad_err, monotone ? "yes" : "no", collapse)};
}

// 11. A very strong source-relay link still leaves a gap to MISO.
Verdict non_convergence() {
  const double p = 10.0;
  const TwoLayerAllocation plan = oblivious_rate_plan(p, 2).params;
  const PowerConfig cfg{p, p, from_db(60.0)};
  const double simplex = simplex_equal_throughput(plan, cfg).r_av;
  const double miso = miso_equal_throughput(plan, p, p).r_av;
  const double r1 = layer_rates(plan, p).r1;
  const double x_lim = std::min(1.0, r1 / std::log(1.0 / plan.alpha_bar()));
  const double eps1 = decoding_times(plan, cfg).eps1;
  const double predicted =
      x_lim < 1.0 ? simplex_throughput_at(BoundContext::at_time(plan, cfg, x_lim), BoundFamily::equal).r_av
                  : direct_throughput(plan, p).r_av;
  const double gap = miso - simplex;
  const double pred_gap = miso - predicted;
  const bool ok = gap > 0.0 && pred_gap > 0.0 && std::abs(gap - pred_gap) <= 0.1 * pred_gap &&
                  std::abs(eps1 - x_lim) <= 0.01 * x_lim;
  return {ok, fmt("P_s=P_r=10dB, Q=60dB: miso %.5f simplex %.5f gap %.5f; eps1 %.4f vs limit %.4f; "
                  "gap predicted at the limit %.5f",
                  miso, simplex, gap, eps1, x_lim, pred_gap)};
}

// 12. Full duplex against simplex on the same channels.
Verdict full_duplex() {
  struct Point {
    double ps_db;
    double q_db;
  };
  std::vector<Point> pts;
  for (double ps : {0.0, 10.0, 20.0}) {
    for (double q : {0.0, 10.0, 20.0, 30.0}) {
      pts.push_back({ps, q});
    }
  }
  struct Row {
    bool sufficient;
    double fd, sx, se;
  };
  const auto rows = cli::parallel_map(pts.size(), workers(), [&](std::size_t i) {
    const double p = from_db(pts[i].ps_db);
    const PowerConfig cfg{p, p, from_db(pts[i].q_db)};
    const TwoLayerAllocation plan = oblivious_rate_plan(p, 2).params.with_equal_split();
    SimConfig sim;
    sim.blocks = 1'000'000;
    sim.seed = 7;
    sim.params = plan;
    sim.strategy = Strategy::full_duplex;
    const SimEstimate fd = simulate_strategy(sim, cfg);
    sim.strategy = Strategy::simplex_equal;
    const SimEstimate sx = simulate_strategy(sim, cfg);
    return Row{duplex_gain_condition(plan, cfg).simplex_sufficient, fd.mean, sx.mean,
               std::max(fd.std_error, sx.std_error)};
  });
  bool ok = true;
  std::string d;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Row& r = rows[i];
    const bool gain = r.fd > r.sx + 3.0 * r.se;
    if (r.sufficient && gain) {
      ok = false;
    }
    if (gain && (pts[i].q_db > 10.0 || pts[i].ps_db > 10.0)) {
      ok = false;
    }
    if (gain || !r.sufficient) {
      d += fmt(" [P_s=%g Q=%g: fd %.4f sx %.4f %s]", pts[i].ps_db, pts[i].q_db, r.fd, r.sx,
               r.sufficient ? "sufficient" : "not-sufficient");
    }
  }
  return {ok, fmt("%zu points; gains or non-sufficient verdicts:", pts.size()) + (d.empty() ? " none" : d)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict()> run;
};

} // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "oracle equivalence", oracle_equivalence},
      {2, "no-relay branch convention", eq3_convention},
      {3, "two-layer gap closing (fig3)", fig3_gap},
      {4, "simplex relay gain (fig6)", fig6_gain},
      {5, "relay split gain (fig8)", fig8_gain},
      {6, "unequal MISO dominance", miso_dominance},
      {7, "equal split under strong relay", strong_relay_split},
      {8, "outage exponents", dmt},
      {9, "threshold-function properties", threshold_properties},
      {10, "continuous broadcasting", continuous_broadcast},
      {11, "non-convergence to MISO", non_convergence},
      {12, "full duplex (fig9)", full_duplex},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) {
    wanted.insert(std::atoi(argv[i]));
  }
  int failed = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) {
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %2d  %-32s %s  (%.1fs)\n", v.pass ? "PASS" : "FAIL", c.id, c.name,
                v.detail.c_str(), secs);
    std::fflush(stdout);
    failed += v.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
