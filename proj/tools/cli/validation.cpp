// SPDX-License-Identifier: Apache-2.0
#include "validation.hpp"

#include <cmath>
#include <utility>

#include <bcrelay/rng.hpp>

#include "grid.hpp"

namespace bcrelay::cli {

namespace {

constexpr std::uint64_t kCorpusStream = 0x636f72707573; // "corpus"

double lerp(double u, double lo, double hi) { return lo + u * (hi - lo); }

} // namespace

const std::vector<Scheme>& validated_schemes() {
  static const std::vector<Scheme> s{Scheme::single_layer_sdf, Scheme::direct,
                                     Scheme::miso_equal,       Scheme::miso_unequal,
                                     Scheme::simplex_equal,    Scheme::simplex_unequal};
  return s;
}

PowerConfig CorpusPoint::power() const {
  return {from_db(ps_db), from_db(pr_db), from_db(q_db)};
}

std::vector<CorpusPoint> validation_corpus(int draws, std::uint64_t seed,
                                           const std::vector<Scheme>& schemes) {
  std::vector<CorpusPoint> out;
  const RandomStream root(seed, kCorpusStream);
  for (const Scheme s : schemes) {
    const RandomStream stream = root.split(static_cast<std::uint64_t>(s));
    for (int d = 0; d < draws; ++d) {
      const auto a = stream.at(2 * static_cast<std::uint64_t>(d));
      const auto b = stream.at(2 * static_cast<std::uint64_t>(d) + 1);
      const auto u = [&](int i) { return to_unit_interval(i < 4 ? a[i] : b[i - 4]); };
      CorpusPoint p;
      p.scheme = s;
      p.draw = d;
      p.ps_db = lerp(u(0), -5.0, 25.0);
      p.pr_db = p.ps_db + lerp(u(1), -10.0, 10.0);
      p.q_db = lerp(u(2), -5.0, 30.0);
      p.alloc.alpha = lerp(u(3), 0.05, 1.0);
      switch (s) {
      case Scheme::miso_unequal:
        p.alloc.beta = u(4);
        break;
      case Scheme::simplex_unequal:
        p.alloc.beta = p.alloc.alpha + u(4) * (1.0 - p.alloc.alpha);
        break;
      default:
        p.alloc.beta = p.alloc.alpha;
      }
      p.alloc.eta1 = lerp(u(5), 0.02, 2.0);
      p.alloc.eta2 = p.alloc.eta1 + lerp(u(6), 0.0, 3.0);
      p.rate = lerp(u(7), 0.05, 4.0);
      p.sim_seed = stream.split(static_cast<std::uint64_t>(d)).seed();
      out.push_back(p);
    }
  }
  return out;
}

std::vector<ValidationRow> run_validation(const std::vector<CorpusPoint>& corpus,
                                          std::uint64_t blocks, double sigmas, unsigned workers,
                                          const std::function<void(const ValidationRow&)>& progress) {
  // Simulation is itself chunk-parallel, so the points run one after another.
  std::vector<ValidationRow> rows;
  rows.reserve(corpus.size());
  for (const CorpusPoint& p : corpus) {
    const PowerConfig cfg = p.power();
    Evaluation e;
    e.scheme = p.scheme;
    e.alloc = p.alloc;
    e.rate = p.rate;
    e.result = closed_form(p.scheme, p.alloc, p.rate, cfg);
    auto sim = simulation_for(e, cfg);
    sim->blocks = blocks;
    sim->seed = p.sim_seed;
    sim->workers = workers;
    ValidationRow row;
    row.point = p;
    row.closed_form = e.result.r_av;
    row.mc = simulate_strategy(*sim, cfg);
    const double diff = row.closed_form - row.mc.mean;
    if (row.mc.std_error > 0.0) {
      row.z = diff / row.mc.std_error;
      row.pass = std::abs(row.z) <= sigmas;
    } else {
      // Every block credited the same amount. Events rarer than about -log(tail)/blocks go
      // unseen at the chosen confidence, so allow that much probability mass at full credit.
      const double unseen = -std::log(std::erfc(sigmas / std::sqrt(2.0))) / static_cast<double>(blocks);
      const double full = e.result.r1 + e.result.r2;
      row.z = 0.0;
      row.pass = std::abs(diff) <= full * unseen + 1e-12 * std::max(1.0, std::abs(row.closed_form));
    }
    if (progress) {
      progress(row);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Table validation_table(const std::vector<ValidationRow>& rows) {
  Table t({"scheme", "draw", "ps_db", "pr_db", "q_db", "alpha", "beta", "eta1", "eta2", "rate",
           "closed_form", "mc_mean", "mc_std_error", "z", "pass"});
  for (const auto& r : rows) {
    const auto& p = r.point;
    const bool layered = is_two_layer(p.scheme);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    t.add_row({std::string(to_string(p.scheme)), std::int64_t{p.draw}, p.ps_db, p.pr_db, p.q_db,
               layered ? p.alloc.alpha : nan, layered ? p.alloc.beta : nan,
               layered ? p.alloc.eta1 : nan, layered ? p.alloc.eta2 : nan,
               layered ? nan : p.rate, r.closed_form, r.mc.mean, r.mc.std_error, r.z,
               std::int64_t{r.pass ? 1 : 0}});
  }
  return t;
}

} // namespace bcrelay::cli
