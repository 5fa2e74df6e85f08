// SPDX-License-Identifier: Apache-2.0
#include "bcrelay/monte_carlo.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "bcrelay/numerics.hpp"

namespace bcrelay {

namespace {

constexpr std::array<std::pair<Strategy, std::string_view>, 8> kNames{{
    {Strategy::single_layer_sdf, "single-layer-sdf"},
    {Strategy::direct, "direct"},
    {Strategy::miso_equal, "miso-equal"},
    {Strategy::miso_unequal, "miso-unequal"},
    {Strategy::simplex_equal, "simplex-equal"},
    {Strategy::simplex_unequal, "simplex-unequal"},
    {Strategy::full_duplex, "full-duplex"},
    {Strategy::layered_continuous, "layered-continuous"},
}};

// One-pass mean / second moment (Welford), merged with Chan et al.'s update.
struct Accumulator {
  double n = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) noexcept {
    n += 1.0;
    const double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
  }
  void merge(const Accumulator& o) noexcept {
    if (o.n == 0.0) {
      return;
    }
    const double total = n + o.n;
    const double d = o.mean - mean;
    mean += d * o.n / total;
    m2 += o.m2 + d * d * n * o.n / total;
    n = total;
  }
  double std_error() const noexcept { return n > 1.0 ? std::sqrt(m2 / (n - 1.0) / n) : 0.0; }
};

constexpr std::size_t kTableNodes = 4096;

} // namespace

std::string_view to_string(Strategy s) noexcept {
  for (const auto& [k, name] : kNames) {
    if (k == s) {
      return name;
    }
  }
  return "unknown";
}

Strategy strategy_from_string(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) {
      return k;
    }
  }
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

void SimConfig::validate() const {
  if (blocks == 0) {
    throw std::invalid_argument("SimConfig: blocks must be >= 1");
  }
  bool ok = false;
  switch (strategy) {
  case Strategy::single_layer_sdf:
    ok = std::holds_alternative<SingleLayerParams>(params);
    break;
  case Strategy::direct:
  case Strategy::miso_equal:
    ok = std::holds_alternative<TwoLayerAllocation>(params) ||
         std::holds_alternative<LayerPlan>(params);
    break;
  case Strategy::miso_unequal:
  case Strategy::simplex_equal:
  case Strategy::simplex_unequal:
  case Strategy::full_duplex:
    ok = std::holds_alternative<TwoLayerAllocation>(params);
    break;
  case Strategy::layered_continuous:
    ok = std::holds_alternative<ContinuousParams>(params);
    break;
  }
  if (!ok) {
    throw std::invalid_argument("SimConfig: parameters do not match strategy " +
                                std::string(to_string(strategy)));
  }
}

std::string SimEstimate::provenance() const {
  std::ostringstream os;
  os << "generator=" << generator << " seed=" << seed << " blocks=" << blocks;
  return os.str();
}

struct BlockEvaluator::Impl {
  enum class Kind { single, two_layer, layered, continuous } kind = Kind::two_layer;
  double p_s = 0.0;
  double p_r = 0.0;

  // single layer
  double rate = 0.0;
  double eps = 1.0;

  // two layers: relay forwards layer 1 from e1 and both layers from e2
  double e1 = 1.0;
  double e2 = 1.0;
  double abar = 0.0;
  double bbar = 0.0;

  // layered (rates[i], power fraction of layer i and of everything above it)
  std::vector<double> rates;
  std::vector<double> own;
  std::vector<double> rest;
  bool relay_adds = false;

  // continuous: cumulative rate C on geometric nodes, with C' = rate density
  double u0 = 0.0;
  double u1 = 0.0;
  double log_ratio = 0.0;
  std::vector<double> nodes;
  std::vector<double> cum;
  std::vector<double> slope;

  double continuous_rate(double s) const {
    if (!(s > u0) || nodes.size() < 2) {
      return 0.0;
    }
    if (s >= u1) {
      return cum.back();
    }
    auto j = static_cast<std::size_t>(std::log(s / u0) / log_ratio);
    j = std::min(j, nodes.size() - 2);
    while (j > 0 && s < nodes[j]) {
      --j;
    }
    while (j + 2 < nodes.size() && s > nodes[j + 1]) {
      ++j;
    }
    const double h = nodes[j + 1] - nodes[j];
    const double t = (s - nodes[j]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * cum[j] + (t3 - 2 * t2 + t) * h * slope[j] +
           (-2 * t3 + 3 * t2) * cum[j + 1] + (t3 - t2) * h * slope[j + 1];
  }

  double credited(const FadingSample& f) const {
    const double s_pow = f.nu_s * p_s;
    const double r_pow = f.nu_r * p_r;
    switch (kind) {
    case Kind::single: {
      const double info = eps * std::log1p(s_pow) +
                          (eps < 1.0 ? (1.0 - eps) * std::log1p(s_pow + r_pow) : 0.0);
      return info >= rate ? rate : 0.0;
    }
    case Kind::two_layer: {
      const double r1 = rates[0];
      const double r2 = rates[1];
      const double log_z = std::log1p(abar * s_pow);
      const double log_both = e1 < 1.0 ? std::log1p(s_pow + r_pow) : 0.0;
      double i1 = e1 * (std::log1p(s_pow) - log_z);
      if (e2 > e1) {
        i1 += (e2 - e1) * (log_both - log_z); // relay sends layer 1 at full power
      }
      const double log_late = e2 < 1.0 ? std::log1p(abar * s_pow + bbar * r_pow) : 0.0;
      if (e2 < 1.0) {
        i1 += (1.0 - e2) * (log_both - log_late);
      }
      if (i1 < r1) {
        return 0.0;
      }
      const double i2 = e2 * log_z + (1.0 - e2) * log_late;
      return i2 >= r2 ? r1 + r2 : r1;
    }
    case Kind::layered: {
      const double y = relay_adds ? s_pow + r_pow : s_pow;
      double total = 0.0;
      for (std::size_t i = 0; i < rates.size(); ++i) {
        const double info = std::log1p(y * (own[i] + rest[i])) - std::log1p(y * rest[i]);
        if (info < rates[i]) {
          break;
        }
        total += rates[i];
      }
      return total;
    }
    case Kind::continuous:
      // Layer u is decoded iff its SINR density s rho / (1 + s I) with the
      // relay adding (P_r / P_s) times the source layering reaches
      // u rho / (1 + u I), i.e. iff s = (nu_s P_s + nu_r P_r) / P_s >= u.
      return continuous_rate((s_pow + r_pow) / p_s);
    }
    return 0.0;
  }
};

namespace {

void setup_layered(BlockEvaluator::Impl& m, const LayerPlan& plan, double p_s) {
  plan.validate();
  m.kind = BlockEvaluator::Impl::Kind::layered;
  m.rates = multilayer_rates(plan, p_s);
  const std::size_t n = plan.size();
  m.own.assign(plan.fractions.begin(), plan.fractions.end());
  m.rest.assign(n, 0.0);
  double acc = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    m.rest[k] = acc;
    acc += plan.fractions[k];
  }
}

void setup_two_layer(BlockEvaluator::Impl& m, const TwoLayerAllocation& alloc, double e1,
                     double e2, double beta, double p_s) {
  alloc.validate();
  m.kind = BlockEvaluator::Impl::Kind::two_layer;
  const auto r = layer_rates(alloc, p_s);
  m.rates = {r.r1, r.r2};
  m.e1 = e1;
  m.e2 = e2;
  m.abar = alloc.alpha_bar();
  m.bbar = 1.0 - beta;
}

void setup_continuous(BlockEvaluator::Impl& m, const PowerDensity& pd) {
  m.kind = BlockEvaluator::Impl::Kind::continuous;
  m.u0 = pd.u0;
  m.u1 = pd.u1;
  if (!(pd.u1 > pd.u0) || !(pd.u0 > 0.0)) {
    m.nodes.clear();
    return;
  }
  const auto g = [&pd](double u) {
    return u * pd.density(u) / (1.0 + u * pd.residual(u));
  };
  m.log_ratio = std::log(pd.u1 / pd.u0) / static_cast<double>(kTableNodes - 1);
  m.nodes.resize(kTableNodes);
  for (std::size_t j = 0; j < kTableNodes; ++j) {
    m.nodes[j] = j + 1 == kTableNodes ? pd.u1 : pd.u0 * std::exp(m.log_ratio * j);
  }
  m.cum.assign(kTableNodes, 0.0);
  m.slope.assign(kTableNodes, 0.0);
  numerics::QuadratureOptions opts;
  opts.abs_tol = 1e-14;
  opts.initial_panels = 1;
  for (std::size_t j = 0; j < kTableNodes; ++j) {
    // One-sided at the ends: the density jumps at u0 and u1.
    double at = m.nodes[j];
    if (j == 0) {
      at = std::nextafter(at, pd.u1);
    } else if (j + 1 == kTableNodes) {
      at = std::nextafter(at, pd.u0);
    }
    m.slope[j] = g(at);
    if (j > 0) {
      m.cum[j] = m.cum[j - 1] + numerics::integrate(g, m.nodes[j - 1], m.nodes[j], opts).value;
    }
  }
}

} // namespace

BlockEvaluator::BlockEvaluator(const SimConfig& config, const PowerConfig& cfg)
    : impl_(std::make_unique<Impl>()) {
  config.validate();
  cfg.validate();
  Impl& m = *impl_;
  m.p_s = cfg.p_s;
  m.p_r = cfg.p_r;
  const auto* alloc = std::get_if<TwoLayerAllocation>(&config.params);
  switch (config.strategy) {
  case Strategy::single_layer_sdf:
    m.kind = Impl::Kind::single;
    m.rate = std::max(0.0, std::get<SingleLayerParams>(config.params).rate);
    m.eps = single_layer_decoding_time(m.rate, cfg.p_s, cfg.q);
    m.rates = {m.rate};
    break;
  case Strategy::direct:
    if (alloc) {
      setup_two_layer(m, *alloc, 1.0, 1.0, alloc->alpha, cfg.p_s);
    } else {
      setup_layered(m, std::get<LayerPlan>(config.params), cfg.p_s);
      m.relay_adds = false;
    }
    break;
  case Strategy::miso_equal:
    if (alloc) {
      setup_two_layer(m, *alloc, 0.0, 0.0, alloc->alpha, cfg.p_s);
    } else {
      setup_layered(m, std::get<LayerPlan>(config.params), cfg.p_s);
      m.relay_adds = true;
    }
    break;
  case Strategy::miso_unequal:
    setup_two_layer(m, *alloc, 0.0, 0.0, alloc->beta, cfg.p_s);
    break;
  case Strategy::simplex_equal: {
    const double x = decoding_times(*alloc, cfg).eps2;
    setup_two_layer(m, *alloc, x, x, alloc->alpha, cfg.p_s);
    break;
  }
  case Strategy::simplex_unequal: {
    const double x = decoding_times(*alloc, cfg).eps2;
    setup_two_layer(m, *alloc, x, x, alloc->beta, cfg.p_s);
    break;
  }
  case Strategy::full_duplex: {
    const auto t = decoding_times(*alloc, cfg);
    setup_two_layer(m, *alloc, t.eps1, t.eps2, alloc->beta, cfg.p_s);
    break;
  }
  case Strategy::layered_continuous:
    if (!(cfg.p_s > 0.0)) {
      throw std::invalid_argument("layered-continuous simulation needs p_s > 0");
    }
    setup_continuous(m, std::get<ContinuousParams>(config.params).density);
    break;
  }
}

BlockEvaluator::~BlockEvaluator() = default;
BlockEvaluator::BlockEvaluator(BlockEvaluator&&) noexcept = default;
BlockEvaluator& BlockEvaluator::operator=(BlockEvaluator&&) noexcept = default;

double BlockEvaluator::credited(const FadingSample& f) const { return impl_->credited(f); }

const std::vector<double>& BlockEvaluator::layer_rates() const noexcept { return impl_->rates; }

SimEstimate simulate_strategy(const SimConfig& config, const PowerConfig& cfg) {
  const BlockEvaluator eval(config, cfg);
  const RandomStream stream(config.seed, 0);
  const std::uint64_t chunks = (config.blocks + kSimulationChunk - 1) / kSimulationChunk;
  std::vector<Accumulator> partial(chunks);

  std::atomic<std::uint64_t> next{0};
  const auto work = [&] {
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      const std::uint64_t begin = c * kSimulationChunk;
      const std::uint64_t end = std::min(config.blocks, begin + kSimulationChunk);
      Accumulator acc;
      for (std::uint64_t i = begin; i < end; ++i) {
        acc.add(eval.credited(fading_at(stream, i)));
      }
      partial[c] = acc;
    }
  };
  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::uint64_t>(config.workers, 1, chunks));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back(work);
    }
    for (auto& t : pool) {
      t.join();
    }
  }

  Accumulator total;
  for (const auto& p : partial) {
    total.merge(p);
  }
  SimEstimate est;
  est.mean = total.mean;
  est.std_error = total.std_error();
  est.blocks = config.blocks;
  est.seed = config.seed;
  est.generator = std::string(Philox4x64::name) + "/v" + std::to_string(Philox4x64::version);
  return est;
}

ProbabilityEstimate conditional_layer_probability(double v_s, int layer, const BoundContext& ctx,
                                                  std::uint64_t blocks, std::uint64_t seed) {
  if (layer != 1 && layer != 2) {
    throw std::invalid_argument("conditional_layer_probability: layer must be 1 or 2");
  }
  if (blocks == 0) {
    throw std::invalid_argument("conditional_layer_probability: blocks must be >= 1");
  }
  const double x = ctx.x;
  const double abar = ctx.alloc.alpha_bar();
  const double bbar = ctx.alloc.beta_bar();
  const double s_pow = v_s * ctx.cfg.p_s;
  const double log_z = std::log1p(abar * s_pow);
  const double log_c = std::log1p(s_pow) - log_z;
  const RandomStream stream(seed, 1);
  Accumulator acc;
  for (std::uint64_t i = 0; i < blocks; ++i) {
    const double r_pow = fading_at(stream, i).nu_r * ctx.cfg.p_r;
    bool ok = false;
    if (layer == 1) {
      const double info = x * log_c + (1.0 - x) * (std::log1p(s_pow + r_pow) -
                                                   std::log1p(abar * s_pow + bbar * r_pow));
      ok = info >= ctx.r1;
    } else {
      const double info = x * log_z + (1.0 - x) * std::log1p(abar * s_pow + bbar * r_pow);
      ok = info >= ctx.r2;
    }
    acc.add(ok ? 1.0 : 0.0);
  }
  return {acc.mean, acc.std_error(), blocks};
}

} // namespace bcrelay
