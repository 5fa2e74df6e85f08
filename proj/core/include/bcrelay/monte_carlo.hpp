// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bcrelay/bounds.hpp"
#include "bcrelay/broadcast.hpp"
#include "bcrelay/model.hpp"
#include "bcrelay/two_layer.hpp"

// Block-fading simulation. Each block draws (nu_s, nu_r), works out what the
// destination can decode from the accumulated mutual information, and credits
// the decoded rate. Block i always uses counter i of stream (seed, 0), so
// different strategies run with the same seed see the same channels.

namespace bcrelay {

enum class Strategy {
  single_layer_sdf,
  direct,
  miso_equal,
  miso_unequal,
  simplex_equal,
  simplex_unequal,
  full_duplex,
  layered_continuous,
};

std::string_view to_string(Strategy s) noexcept;
/// Accepts the hyphenated names printed by to_string. Throws std::invalid_argument.
Strategy strategy_from_string(std::string_view name);

struct SingleLayerParams {
  double rate = 0.0;
};

/// Source layering for the continuous strategy; the relay reuses it scaled
/// by P_r / P_s.
struct ContinuousParams {
  PowerDensity density;
};

/// single_layer_sdf: SingleLayerParams; direct / miso_equal: TwoLayerAllocation
/// or LayerPlan; other two-layer strategies: TwoLayerAllocation;
/// layered_continuous: ContinuousParams.
using StrategyParams = std::variant<SingleLayerParams, TwoLayerAllocation, LayerPlan, ContinuousParams>;

struct SimConfig {
  std::uint64_t blocks = 1'000'000;
  std::uint64_t seed = 0;
  Strategy strategy = Strategy::direct;
  StrategyParams params = TwoLayerAllocation{};
  /// Worker threads; results do not depend on it.
  unsigned workers = 1;

  /// Throws std::invalid_argument for blocks == 0 or params not matching strategy.
  void validate() const;
};

struct SimEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t blocks = 0;
  std::uint64_t seed = 0;
  std::string generator;

  /// One-line record of generator, version, seed and block count.
  std::string provenance() const;
};

/// Per-block decoding rule for a configured strategy.
class BlockEvaluator {
public:
  BlockEvaluator(const SimConfig& config, const PowerConfig& cfg);
  ~BlockEvaluator();
  BlockEvaluator(BlockEvaluator&&) noexcept;
  BlockEvaluator& operator=(BlockEvaluator&&) noexcept;

  /// Rate credited for one block: the sum of the rates of the decoded prefix of layers.
  double credited(const FadingSample& f) const;

  /// Layer rates in decoding order (empty for the continuous strategy).
  const std::vector<double>& layer_rates() const noexcept;

  struct Impl; // opaque

private:
  std::unique_ptr<Impl> impl_;
};

/// Fixed-size chunks of blocks are accumulated independently and merged in
/// chunk order, so the estimate is bit-identical for any worker count.
SimEstimate simulate_strategy(const SimConfig& config, const PowerConfig& cfg);

/// Chunk length used by simulate_strategy.
inline constexpr std::uint64_t kSimulationChunk = 1u << 16;

struct ProbabilityEstimate {
  double p = 0.0;
  double std_error = 0.0;
  std::uint64_t blocks = 0;
};

/// P(layer decodable | nu_s = v_s) with nu_r sampled, for a simplex relay that
/// forwards from ctx.x on with split ctx.alloc.beta. Layer 1 tests the layer-1
/// condition; layer 2 tests the layer-2 condition with layer 1 cancelled.
ProbabilityEstimate conditional_layer_probability(double v_s, int layer, const BoundContext& ctx,
                                                  std::uint64_t blocks, std::uint64_t seed);

} // namespace bcrelay
