// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>

#include "bcrelay/rng.hpp"

// Channel and power model shared by every evaluator. All rates are in nats
// per channel use and all powers and gains are linear.

namespace bcrelay {

/// Source power, relay power and source-to-relay collocation gain.
struct PowerConfig {
  double p_s = 1.0;
  double p_r = 1.0;
  double q = 1.0;

  /// Throws std::invalid_argument when any field is negative or not finite.
  void validate() const;
};

/// Squared fading magnitudes of the source and relay links to the destination.
struct FadingSample {
  double nu_s = 0.0;
  double nu_r = 0.0;
};

/// Two-layer superposition plan.
///
/// `alpha` is the share of source power given to layer 1 (the "bad channel"
/// layer), `beta` the relay's share. Layer i is designed to be decodable at
/// the destination without relay help when the source fading exceeds eta_i.
struct TwoLayerAllocation {
  double alpha = 1.0;
  double beta = 1.0;
  double eta1 = 0.0;
  double eta2 = 0.0;

  double alpha_bar() const noexcept { return 1.0 - alpha; }
  double beta_bar() const noexcept { return 1.0 - beta; }

  /// Throws std::invalid_argument unless alpha, beta in [0,1] and 0 <= eta1 <= eta2.
  void validate() const;

  /// Same plan with the relay reusing the source split (beta = alpha).
  TwoLayerAllocation with_equal_split() const noexcept {
    TwoLayerAllocation a = *this;
    a.beta = alpha;
    return a;
  }
};

/// Fractions of the block after which the relay holds layer 1 / both layers.
struct DecodingTimes {
  double eps1 = 1.0;
  double eps2 = 1.0;
};

/// Outcome of a two-layer (or single-layer, r2 = 0) throughput evaluation.
///
/// `p_layer1` is the probability that layer 1 is decoded; `p_both` that both
/// layers are decoded. Successive decoding forces p_both <= p_layer1.
struct ThroughputResult {
  double r1 = 0.0;
  double r2 = 0.0;
  double p_layer1 = 0.0;
  double p_both = 0.0;
  double r_av = 0.0;

  static ThroughputResult from_probabilities(double r1, double r2, double p_layer1,
                                             double p_both) noexcept {
    return {r1, r2, p_layer1, p_both, r1 * p_layer1 + r2 * p_both};
  }
  static ThroughputResult single_layer(double r, double p_decode) noexcept {
    return from_probabilities(r, 0.0, p_decode, p_decode);
  }
};

struct LayerRates {
  double r1 = 0.0;
  double r2 = 0.0;
};

/// Rates of the two layers for a given plan.
LayerRates layer_rates(const TwoLayerAllocation& alloc, double p_s);

/// Single-layer relay decoding time min(1, R / log(1 + Q P_s)).
double single_layer_decoding_time(double r, double p_s, double q);

/// Relay decoding times for explicit layer rates. When the relay link carries
/// no mutual information for a layer with positive rate, the relay never
/// decodes it and the corresponding time is 1.
DecodingTimes decoding_times(double r1, double r2, double alpha, const PowerConfig& cfg);

/// Relay decoding times with rates derived from the plan.
DecodingTimes decoding_times(const TwoLayerAllocation& alloc, const PowerConfig& cfg);

/// Draws one block of fading from the stream's next counter.
FadingSample sample_fading(RandomStream& rng) noexcept;

/// Fading for block `index` of the stream; independent of visit order.
FadingSample fading_at(const RandomStream& rng, std::uint64_t index) noexcept;

} // namespace bcrelay
