// SPDX-License-Identifier: Apache-2.0
#include "bcrelay/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bcrelay {

namespace {

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

// Fraction of the block needed to accumulate `rate` nats at `capacity` nats
// per use. A zero-rate layer is held immediately; a layer the relay link
// cannot carry is never held.
double time_to_decode(double rate, double capacity) {
  if (rate <= 0.0) {
    return 0.0;
  }
  if (!(capacity > 0.0)) {
    return 1.0;
  }
  return std::min(1.0, rate / capacity);
}

} // namespace

void PowerConfig::validate() const {
  if (!finite_nonneg(p_s) || !finite_nonneg(p_r) || !finite_nonneg(q)) {
    throw std::invalid_argument("PowerConfig: powers and gain must be finite and >= 0 (p_s=" +
                                std::to_string(p_s) + ", p_r=" + std::to_string(p_r) +
                                ", q=" + std::to_string(q) + ")");
  }
}

void TwoLayerAllocation::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0) || !(beta >= 0.0 && beta <= 1.0)) {
    throw std::invalid_argument("TwoLayerAllocation: alpha and beta must lie in [0,1]");
  }
  if (!finite_nonneg(eta1) || !finite_nonneg(eta2) || eta1 > eta2) {
    throw std::invalid_argument("TwoLayerAllocation: need 0 <= eta1 <= eta2 < inf");
  }
}

LayerRates layer_rates(const TwoLayerAllocation& alloc, double p_s) {
  const double abar = alloc.alpha_bar();
  LayerRates r;
  r.r1 = std::log1p(alloc.eta1 * p_s) - std::log1p(alloc.eta1 * abar * p_s);
  r.r2 = std::log1p(alloc.eta2 * abar * p_s);
  r.r1 = std::max(r.r1, 0.0);
  return r;
}

double single_layer_decoding_time(double r, double p_s, double q) {
  return time_to_decode(r, std::log1p(p_s * q));
}

DecodingTimes decoding_times(double r1, double r2, double alpha, const PowerConfig& cfg) {
  const double abar = 1.0 - alpha;
  const double qp = cfg.q * cfg.p_s;
  const double cap1 = std::log1p(qp * alpha / (1.0 + qp * abar));
  const double cap2 = std::log1p(qp * abar);
  DecodingTimes t;
  t.eps1 = time_to_decode(r1, cap1);
  t.eps2 = std::min(1.0, std::max(t.eps1, time_to_decode(r2, cap2)));
  return t;
}

DecodingTimes decoding_times(const TwoLayerAllocation& alloc, const PowerConfig& cfg) {
  const auto [r1, r2] = layer_rates(alloc, cfg.p_s);
  return decoding_times(r1, r2, alloc.alpha, cfg);
}

FadingSample fading_at(const RandomStream& rng, std::uint64_t index) noexcept {
  const auto block = rng.at(index);
  return {unit_exponential(block[0]), unit_exponential(block[1])};
}

FadingSample sample_fading(RandomStream& rng) noexcept {
  const auto block = rng.next();
  return {unit_exponential(block[0]), unit_exponential(block[1])};
}

} // namespace bcrelay
