// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

#include <bcrelay/rng.hpp>

#include "cli.hpp"
#include "figures.hpp"
#include "grid.hpp"
#include "json_config.hpp"
#include "schemes.hpp"
#include "table.hpp"
#include "validation.hpp"

#ifndef BCRELAY_VERSION
#define BCRELAY_VERSION "0.0.0"
#endif

namespace bcrelay::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Common {
  std::string out = "-";
  unsigned long long seed = kDefaultSeed;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  bool bits = false;

  double scale() const { return bits ? 1.0 / std::numbers::ln2 : 1.0; }
  std::string unit(const std::string& base) const { return base + (bits ? "_bits" : "_nats"); }
};

void add_common(CLI::App* app, Common& c, bool with_seed) {
  app->add_option("-o,--out", c.out, "Output path ('-' for stdout)")->capture_default_str();
  app->add_option("--workers", c.workers, "Worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);
  app->add_flag("--bits", c.bits, "Report rates in bits instead of nats");
  if (with_seed) {
    app->add_option("--seed", c.seed, "Random seed")->envname("BCRELAY_SEED")->capture_default_str();
  }
}

struct Alloc {
  double alpha = 1.0;
  std::optional<double> beta;
  double eta1 = 0.0;
  std::optional<double> eta2;
  double rate = 1.0;

  TwoLayerAllocation get() const {
    TwoLayerAllocation a;
    a.alpha = alpha;
    a.beta = beta.value_or(alpha);
    a.eta1 = eta1;
    a.eta2 = eta2.value_or(eta1);
    return a;
  }
};

void add_alloc(CLI::App* app, Alloc& a) {
  app->add_option("--alpha", a.alpha, "Source power share of layer 1")->check(CLI::Range(0.0, 1.0));
  app->add_option("--beta", a.beta, "Relay power share of layer 1 (default: alpha)")
      ->check(CLI::Range(0.0, 1.0));
  app->add_option("--eta1", a.eta1, "Layer-1 fading threshold")->check(CLI::NonNegativeNumber);
  app->add_option("--eta2", a.eta2, "Layer-2 fading threshold (default: eta1)")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--rate", a.rate, "Single-layer rate in nats")->check(CLI::NonNegativeNumber);
}

struct Opt {
  std::size_t grid_points = 64;
  std::size_t starts = 4;
  double tol = 1e-6;

  OptimizerOptions get(unsigned workers) const {
    OptimizerOptions o;
    o.grid_points = grid_points;
    o.starts = starts;
    o.param_tol = tol;
    o.workers = workers;
    return o;
  }
};

void add_opt(CLI::App* app, Opt& o) {
  app->add_option("--grid-points", o.grid_points, "Optimiser grid points per coordinate")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}))
      ->capture_default_str();
  app->add_option("--starts", o.starts, "Grid points refined by golden section")
      ->check(CLI::PositiveNumber);
  app->add_option("--tol", o.tol, "Optimiser parameter tolerance")->check(CLI::PositiveNumber);
}

bool uses_q(Scheme s) {
  return s == Scheme::single_layer_sdf || s == Scheme::simplex_equal ||
         s == Scheme::simplex_unequal || s == Scheme::full_duplex;
}

nlohmann::json base_manifest(const std::string& command, const CLI::App& sub, const Common& c) {
  return {{"tool", "bcrelay"},
          {"version", BCRELAY_VERSION},
          {"command", command},
          {"seed", c.seed},
          {"generator", std::string(Philox4x64::name) + "/v" + std::to_string(Philox4x64::version)},
          {"units", c.bits ? "bits" : "nats"},
          {"config", options_as_json(sub)}};
}

nlohmann::json columns_json(const Table& t) { return t.columns(); }

// ---------------------------------------------------------------- rate

struct RateArgs {
  Common common;
  Alloc alloc;
  Opt opt;
  std::string scheme;
  double ps_db = 0.0;
  std::optional<double> pr_db;
  std::optional<double> q_db;
  std::string plan = "fixed";
  std::uint64_t blocks = 0;
};

double q_linear(const std::optional<double>& q_db, Scheme s) {
  if (q_db) {
    return from_db(*q_db);
  }
  if (uses_q(s)) {
    throw std::invalid_argument("scheme '" + std::string(to_string(s)) + "' needs --q-db");
  }
  return 0.0;
}

int run_rate(const RateArgs& a, const CLI::App& sub, std::ostream& out, std::ostream& err) {
  const Scheme s = scheme_from_string(a.scheme);
  const PlanMode mode = plan_mode_from_string(a.plan);
  const double pr_db = a.pr_db.value_or(a.ps_db);
  PointInput in;
  in.cfg = {from_db(a.ps_db), from_db(pr_db), q_linear(a.q_db, s)};
  in.alloc = a.alloc.get();
  in.beta_given = a.alloc.beta.has_value();
  in.rate = a.alloc.rate;
  if (s == Scheme::full_duplex && a.blocks == 0) {
    throw std::invalid_argument("full-duplex is simulated only; pass --blocks");
  }
  const auto e = evaluate_scheme(s, mode, in, a.opt.get(a.common.workers));

  const auto& c = a.common;
  std::vector<std::string> cols{"scheme", "ps_db", "pr_db", "q_db", "plan", "alpha", "beta",
                                "eta1", "eta2", "rate", c.unit("r1"), c.unit("r2"), "p_layer1",
                                "p_both", c.unit("throughput")};
  std::optional<SimEstimate> mc;
  if (a.blocks > 0) {
    auto sim = simulation_for(e, in.cfg);
    if (!sim) {
      throw std::invalid_argument("scheme '" + a.scheme + "' has no simulator");
    }
    sim->blocks = a.blocks;
    sim->seed = c.seed;
    sim->workers = c.workers;
    mc = simulate_strategy(*sim, in.cfg);
    cols.push_back(c.unit("mc_mean"));
    cols.push_back(c.unit("mc_std_error"));
  }
  Table t(cols);
  const bool layered = is_two_layer(s);
  const auto& r = e.result;
  std::vector<Cell> row{a.scheme,
                        a.ps_db,
                        pr_db,
                        a.q_db.value_or(kNaN),
                        a.plan,
                        layered ? e.alloc.alpha : kNaN,
                        layered ? e.alloc.beta : kNaN,
                        layered ? e.alloc.eta1 : kNaN,
                        layered ? e.alloc.eta2 : kNaN,
                        is_single_layer(s) ? e.rate : kNaN,
                        r.r1 * c.scale(),
                        r.r2 * c.scale(),
                        r.p_layer1,
                        r.p_both,
                        r.r_av * c.scale()};
  if (mc) {
    row.emplace_back(mc->mean * c.scale());
    row.emplace_back(mc->std_error * c.scale());
  }
  t.add_row(std::move(row));
  auto m = base_manifest("rate", sub, c);
  m["columns"] = columns_json(t);
  if (mc) {
    m["simulation"] = mc->provenance();
  }
  emit(t, {c.out}, m, out, err);
  return 0;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  Common common;
  Alloc alloc;
  Opt opt;
  std::vector<std::string> schemes;
  std::string ps_db;
  std::string pr_db;
  std::string ratio_db;
  std::string q_db;
  std::string plan = "oblivious";
};

int run_sweep(const SweepArgs& a, const CLI::App& sub, std::ostream& out, std::ostream& err) {
  std::vector<Scheme> schemes;
  for (const auto& name : a.schemes) {
    schemes.push_back(scheme_from_string(name));
    if (schemes.back() == Scheme::full_duplex) {
      throw std::invalid_argument("full-duplex is simulated only; use `figure fig9`");
    }
  }
  const PlanMode mode = plan_mode_from_string(a.plan);
  const auto ps = parse_grid(a.ps_db);
  const bool relative = a.pr_db.empty();
  const auto pr = parse_grid(relative ? (a.ratio_db.empty() ? "0" : a.ratio_db) : a.pr_db);
  const bool need_q = std::any_of(schemes.begin(), schemes.end(), uses_q);
  if (need_q && a.q_db.empty()) {
    throw std::invalid_argument("the selected schemes need --q-db");
  }
  const auto q = a.q_db.empty() ? std::vector<double>{kNaN} : parse_grid(a.q_db);

  struct Job {
    double ps_db, pr_db, q_db;
    Scheme scheme;
  };
  std::vector<Job> jobs;
  for (double x : ps) {
    for (double y : pr) {
      for (double z : q) {
        for (Scheme s : schemes) {
          jobs.push_back({x, relative ? x + y : y, z, s});
        }
      }
    }
  }
  const auto opts = a.opt.get(1);
  const auto results = parallel_map(jobs.size(), a.common.workers, [&](std::size_t i) {
    const Job& j = jobs[i];
    PointInput in;
    in.cfg = {from_db(j.ps_db), from_db(j.pr_db), std::isnan(j.q_db) ? 0.0 : from_db(j.q_db)};
    in.alloc = a.alloc.get();
    in.beta_given = a.alloc.beta.has_value();
    in.rate = a.alloc.rate;
    return evaluate_scheme(j.scheme, mode, in, opts);
  });

  const auto& c = a.common;
  Table t({"ps_db", "pr_db", "q_db", "scheme", "alpha", "beta", "eta1", "eta2", "rate",
           c.unit("throughput")});
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& j = jobs[i];
    const auto& e = results[i];
    const bool layered = is_two_layer(j.scheme);
    t.add_row({j.ps_db, j.pr_db, j.q_db, std::string(to_string(j.scheme)),
               layered ? e.alloc.alpha : kNaN, layered ? e.alloc.beta : kNaN,
               layered ? e.alloc.eta1 : kNaN, layered ? e.alloc.eta2 : kNaN,
               is_single_layer(j.scheme) ? e.rate : kNaN, e.result.r_av * c.scale()});
  }
  auto m = base_manifest("sweep", sub, c);
  m["grid"] = {{"ps_db", grid_text(ps)},
               {relative ? "pr_over_ps_db" : "pr_db", grid_text(pr)},
               {"q_db", a.q_db.empty() ? "" : grid_text(q)}};
  m["columns"] = columns_json(t);
  emit(t, {c.out}, m, out, err);
  return 0;
}

// ---------------------------------------------------------------- figure

struct FigureArgs {
  Common common;
  std::string preset;
  bool list = false;
  std::string ps_db;
  std::string q_db;
  std::string ratio;
  std::string ratio_db;
  std::uint64_t blocks = 200'000;
  std::size_t grid_points = 32;
  bool plot_script = false;
};

int run_figure_command(const FigureArgs& a, const CLI::App& sub, std::ostream& out,
                       std::ostream& err) {
  if (a.list) {
    for (const auto& p : figure_presets()) {
      out << p.name << "  " << p.summary << '\n';
    }
    return 0;
  }
  if (a.preset.empty()) {
    throw std::invalid_argument("figure: name a preset (see --list)");
  }
  const auto& preset = find_preset(a.preset);
  FigureOptions fo;
  if (!a.ps_db.empty()) {
    fo.ps_db = parse_grid(a.ps_db);
  }
  if (!a.q_db.empty()) {
    fo.q_db = parse_grid(a.q_db);
  }
  if (!a.ratio.empty() && !a.ratio_db.empty()) {
    throw std::invalid_argument("figure: --ratio and --ratio-db are exclusive");
  }
  if (!a.ratio.empty()) {
    fo.pr_over_ps = parse_grid(a.ratio);
  } else if (!a.ratio_db.empty()) {
    std::vector<double> r;
    for (double x : parse_grid(a.ratio_db)) {
      r.push_back(from_db(x));
    }
    fo.pr_over_ps = r;
  }
  fo.blocks = a.blocks;
  fo.seed = a.common.seed;
  fo.workers = a.common.workers;
  fo.bits = a.common.bits;
  fo.optimizer.grid_points = a.grid_points;

  const auto grid = resolve_grid(preset, fo);
  // Check the destination before spending minutes on the computation.
  OutputTarget target{a.common.out};
  if (!target.is_stdout()) {
    std::filesystem::path dir(a.common.out);
    std::filesystem::create_directories(dir);
    target.path = (dir / (preset.name + ".csv")).string();
    write_text_file(target.path, "");
  }
  const Table t = run_figure(preset, fo);

  auto m = base_manifest("figure", sub, a.common);
  m["preset"] = preset.name;
  m["summary"] = preset.summary;
  m["grid"] = {{"ps_db", grid_text(grid.ps_db)},
               {"q_db", grid_text(grid.q_db)},
               {"pr_over_ps", grid_text(grid.pr_over_ps)}};
  if (preset.monte_carlo) {
    m["blocks"] = a.blocks;
  }
  m["columns"] = columns_json(t);
  emit(t, target, m, out, err);
  if (a.plot_script && !target.is_stdout()) {
    const auto gp = std::filesystem::path(target.path).replace_extension(".gp");
    write_text_file(gp, plot_script(preset, std::filesystem::path(target.path).filename().string(),
                                    a.common.bits));
  }
  return 0;
}

// ---------------------------------------------------------------- validate

struct ValidateArgs {
  Common common;
  int draws = 50;
  std::uint64_t blocks = 1'000'000;
  double sigmas = 3.0;
  std::vector<std::string> schemes;
  bool quiet = false;
};

int run_validate(const ValidateArgs& a, const CLI::App& sub, std::ostream& out, std::ostream& err) {
  std::vector<Scheme> schemes;
  for (const auto& name : a.schemes) {
    const Scheme s = scheme_from_string(name);
    const auto& ok = validated_schemes();
    if (std::find(ok.begin(), ok.end(), s) == ok.end()) {
      throw std::invalid_argument("scheme '" + name + "' is not part of the validation corpus");
    }
    schemes.push_back(s);
  }
  if (schemes.empty()) {
    schemes = validated_schemes();
  }
  const auto corpus = validation_corpus(a.draws, a.common.seed, schemes);
  const auto rows = run_validation(corpus, a.blocks, a.sigmas, a.common.workers,
                                   [&](const ValidationRow& r) {
                                     if (!a.quiet && !r.pass) {
                                       err << "violation: " << to_string(r.point.scheme) << " draw "
                                           << r.point.draw << " z = " << format_cell(r.z) << '\n';
                                     }
                                   });
  Table t = validation_table(rows);
  std::size_t failed = 0;
  double worst = 0.0;
  for (const auto& r : rows) {
    failed += r.pass ? 0 : 1;
    worst = std::max(worst, std::abs(r.z));
  }
  auto m = base_manifest("validate", sub, a.common);
  m["draws"] = a.draws;
  m["blocks"] = a.blocks;
  m["sigmas"] = a.sigmas;
  m["columns"] = columns_json(t);
  emit(t, {a.common.out}, m, out, err);
  err << "validate: " << rows.size() - failed << "/" << rows.size() << " within "
      << format_cell(a.sigmas) << " sigma, worst |z| = " << format_cell(worst) << '\n';
  return failed == 0 ? 0 : 1;
}

// ---------------------------------------------------------------- optimize

struct OptimizeArgs {
  Common common;
  Alloc alloc;
  Opt opt;
  std::string objective;
  double ps_db = 0.0;
  std::optional<double> pr_db;
  std::optional<double> q_db;
  std::vector<std::string> free;
  int layers = 2;
};

int run_optimize(const OptimizeArgs& a, const CLI::App& sub, std::ostream& out, std::ostream& err) {
  const auto& c = a.common;
  const auto opts = a.opt.get(c.workers);
  const double p_s = from_db(a.ps_db);
  const double pr_db = a.pr_db.value_or(a.ps_db);
  OptimizationResult res;
  PowerConfig cfg{p_s, from_db(pr_db), a.q_db ? from_db(*a.q_db) : 0.0};
  std::string objective = a.objective;
  if (objective == "oblivious") {
    if (a.layers != 1 && a.layers != 2) {
      throw std::invalid_argument("optimize: --layers must be 1 or 2");
    }
    res = oblivious_rate_plan(p_s, a.layers, opts);
  } else {
    const Objective o = objective_from_string(objective);
    if ((o == Objective::simplex_equal || o == Objective::simplex_unequal) && !a.q_db) {
      throw std::invalid_argument("simplex objectives need --q-db");
    }
    const bool unequal = o == Objective::miso_unequal || o == Objective::simplex_unequal;
    ParamSet free = 0;
    if (a.free.empty()) {
      free = kAlpha | kEta1 | kEta2 | (unequal ? kBeta : 0u);
    }
    for (const auto& f : a.free) {
      if (f == "alpha") {
        free |= kAlpha;
      } else if (f == "beta") {
        free |= kBeta;
      } else if (f == "eta1") {
        free |= kEta1;
      } else if (f == "eta2") {
        free |= kEta2;
      } else {
        throw std::invalid_argument("optimize: unknown parameter '" + f + "'");
      }
    }
    res = maximize_throughput(o, free, a.alloc.get(), cfg, opts);
  }
  const auto rates = layer_rates(res.params, p_s);
  Table t({"objective", "ps_db", "pr_db", "q_db", "alpha", "beta", "eta1", "eta2", c.unit("r1"),
           c.unit("r2"), c.unit("throughput"), "evaluations", "rate_ordering_holds"});
  t.add_row({objective, a.ps_db, pr_db, a.q_db.value_or(kNaN), res.params.alpha, res.params.beta,
             res.params.eta1, res.params.eta2, rates.r1 * c.scale(), rates.r2 * c.scale(),
             res.value * c.scale(), static_cast<std::int64_t>(res.evaluations),
             std::int64_t{res.rate_ordering_holds ? 1 : 0}});
  auto m = base_manifest("optimize", sub, c);
  m["columns"] = columns_json(t);
  emit(t, {c.out}, m, out, err);
  return 0;
}

std::string active_subcommand(const std::vector<std::string>& args) {
  for (const auto& s : args) {
    if (s == "rate" || s == "sweep" || s == "figure" || s == "validate" || s == "optimize") {
      return s;
    }
  }
  return {};
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-layer broadcast approach over a sequential decode-and-forward relay channel"};
  app.name("bcrelay");
  app.require_subcommand(1);
  app.fallthrough();
  app.config_formatter(std::make_shared<JsonConfig>(active_subcommand(args)));
  app.set_config("--config", "", "JSON file mirroring the command-line flags");
  app.set_version_flag("--version", BCRELAY_VERSION);

  const auto scheme_check = CLI::IsMember(scheme_names());
  const auto plan_check = CLI::IsMember({"fixed", "oblivious", "optimized"});

  RateArgs rate;
  auto* rate_cmd = app.add_subcommand("rate", "Evaluate one scheme at one operating point");
  add_common(rate_cmd, rate.common, true);
  add_alloc(rate_cmd, rate.alloc);
  add_opt(rate_cmd, rate.opt);
  rate_cmd->add_option("--scheme", rate.scheme, "Scheme name")->required()->check(scheme_check);
  rate_cmd->add_option("--ps-db", rate.ps_db, "Source power [dB]")->required();
  rate_cmd->add_option("--pr-db", rate.pr_db, "Relay power [dB] (default: ps-db)");
  rate_cmd->add_option("--q-db", rate.q_db, "Source-relay collocation gain [dB]");
  rate_cmd->add_option("--plan", rate.plan, "fixed | oblivious | optimized")
      ->check(plan_check)
      ->capture_default_str();
  rate_cmd->add_option("--blocks", rate.blocks, "Also simulate with this many blocks");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate schemes over a power grid");
  add_common(sweep_cmd, sweep.common, false);
  add_alloc(sweep_cmd, sweep.alloc);
  add_opt(sweep_cmd, sweep.opt);
  sweep_cmd->add_option("--scheme", sweep.schemes, "Scheme names")
      ->required()
      ->delimiter(',')
      ->check(scheme_check);
  sweep_cmd->add_option("--ps-db", sweep.ps_db, "Source power grid [dB], start:stop:step or list")
      ->required();
  auto* pr_opt = sweep_cmd->add_option("--pr-db", sweep.pr_db, "Relay power grid [dB]");
  sweep_cmd->add_option("--ratio-db", sweep.ratio_db, "P_r/P_s grid [dB] (default 0)")
      ->excludes(pr_opt);
  sweep_cmd->add_option("--q-db", sweep.q_db, "Collocation gain grid [dB]");
  sweep_cmd->add_option("--plan", sweep.plan, "fixed | oblivious | optimized")
      ->check(plan_check)
      ->capture_default_str();

  FigureArgs fig;
  fig.common.out = ".";
  auto* fig_cmd = app.add_subcommand("figure", "Write a figure preset as CSV");
  add_common(fig_cmd, fig.common, true);
  fig_cmd->add_option("preset", fig.preset, "Preset name (fig2 .. fig9)");
  fig_cmd->add_flag("--list", fig.list, "List presets");
  fig_cmd->add_option("--ps-db", fig.ps_db, "Override the P_s grid [dB]");
  fig_cmd->add_option("--q-db", fig.q_db, "Override the Q grid [dB]");
  fig_cmd->add_option("--ratio", fig.ratio, "Override the P_r/P_s grid (linear)");
  fig_cmd->add_option("--ratio-db", fig.ratio_db, "Override the P_r/P_s grid [dB]");
  fig_cmd->add_option("--blocks", fig.blocks, "Monte-Carlo blocks per point")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fig_cmd->add_option("--grid-points", fig.grid_points, "Optimiser grid points per coordinate")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}))
      ->capture_default_str();
  fig_cmd->add_flag("--plot-script", fig.plot_script, "Also write a gnuplot stub");

  ValidateArgs val;
  auto* val_cmd = app.add_subcommand("validate", "Closed forms against Monte-Carlo");
  add_common(val_cmd, val.common, true);
  val_cmd->add_option("--draws", val.draws, "Random parameter draws per scheme")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  val_cmd->add_option("--blocks", val.blocks, "Blocks per simulation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  val_cmd->add_option("--sigmas", val.sigmas, "Allowed standard errors")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  val_cmd->add_option("--schemes", val.schemes, "Restrict to these schemes")->delimiter(',');
  val_cmd->add_flag("--quiet", val.quiet, "Do not list violations on stderr");

  OptimizeArgs opt;
  auto* opt_cmd = app.add_subcommand("optimize", "Maximise a two-layer objective");
  add_common(opt_cmd, opt.common, false);
  add_alloc(opt_cmd, opt.alloc);
  add_opt(opt_cmd, opt.opt);
  opt_cmd
      ->add_option("--objective", opt.objective,
                   "direct | miso-equal | miso-unequal | simplex-equal | simplex-unequal | oblivious")
      ->required()
      ->check(CLI::IsMember({"direct", "miso-equal", "miso-unequal", "simplex-equal",
                             "simplex-unequal", "oblivious"}));
  opt_cmd->add_option("--ps-db", opt.ps_db, "Source power [dB]")->required();
  opt_cmd->add_option("--pr-db", opt.pr_db, "Relay power [dB] (default: ps-db)");
  opt_cmd->add_option("--q-db", opt.q_db, "Collocation gain [dB]");
  opt_cmd->add_option("--free", opt.free, "Free parameters among alpha,beta,eta1,eta2")
      ->delimiter(',');
  opt_cmd->add_option("--layers", opt.layers, "Layers for the oblivious plan (1 or 2)")
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (rate_cmd->parsed()) {
      return run_rate(rate, *rate_cmd, out, err);
    }
    if (sweep_cmd->parsed()) {
      return run_sweep(sweep, *sweep_cmd, out, err);
    }
    if (fig_cmd->parsed()) {
      return run_figure_command(fig, *fig_cmd, out, err);
    }
    if (val_cmd->parsed()) {
      return run_validate(val, *val_cmd, out, err);
    }
    if (opt_cmd->parsed()) {
      return run_optimize(opt, *opt_cmd, out, err);
    }
  } catch (const std::invalid_argument& e) {
    err << "bcrelay: error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "bcrelay: error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

} // namespace bcrelay::cli
