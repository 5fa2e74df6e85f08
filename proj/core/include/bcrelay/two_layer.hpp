// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "bcrelay/bounds.hpp"
#include "bcrelay/model.hpp"

namespace bcrelay {

/// N-layer superposition plan. Layer i gets `fractions[i]` of the power and is
/// decodable once the equivalent fading reaches `thresholds[i]`.
struct LayerPlan {
  std::vector<double> thresholds;
  std::vector<double> fractions;

  /// Non-decreasing, non-negative thresholds; fractions >= 0 summing to 1 (1e-9).
  void validate() const;
  std::size_t size() const noexcept { return thresholds.size(); }

  static LayerPlan from(const TwoLayerAllocation& alloc);
};

/// R_i = log(1 + eta_i P (alpha_i + rest_i)) - log(1 + eta_i P rest_i),
/// rest_i being the power fraction of the layers above i.
std::vector<double> multilayer_rates(const LayerPlan& plan, double p_s);

/// For N > 2 layers the result folds layers 2..N into the second slot:
/// r2 = sum of their rates and p_both = their rate-weighted decode
/// probability, so r_av = r1 p_layer1 + r2 p_both still holds.
ThroughputResult direct_multilayer_throughput(const LayerPlan& plan, double p_s);
ThroughputResult direct_throughput(const TwoLayerAllocation& alloc, double p_s);

/// Both antennas reuse the source split, so the destination sees
/// Y = nu_s P_s + nu_r P_r and layer i decodes iff Y >= eta_i P_s.
ThroughputResult miso_equal_throughput(const LayerPlan& plan, double p_s, double p_r);
ThroughputResult miso_equal_throughput(const TwoLayerAllocation& alloc, double p_s, double p_r);

/// Which sign selects the "relay-heavy" branch of the unequal-split MISO
/// closed form. `relay_split` (the default, and the reading that agrees with
/// simulation) tests 1 - e^{R1} beta_bar; `source_split` tests
/// 1 - e^{R1} alpha_bar, which is positive for every plan and therefore never
/// selects that branch.
enum class MisoBranchGuard { relay_split, source_split };

/// Two-layer MISO with independent source and relay splits.
ThroughputResult miso_unequal_throughput(const TwoLayerAllocation& alloc, double p_s, double p_r,
                                         MisoBranchGuard guard = MisoBranchGuard::relay_split);

/// R1 e^{-eta1}(1 + eta1) + R2 e^{-eta2}(1 + eta2): the unequal-split MISO
/// throughput at n = k = 1, which bounds every plan with n, k >= 1.
double miso_unequal_upper_bound(const TwoLayerAllocation& alloc, double p_s);

/// The slopes n = alpha_bar P_s / (beta_bar P_r) and
/// k = alpha P_s / ((beta + eta1 P_s (beta - alpha)) P_r).
struct MisoSlopes {
  double n;
  double k;
};
MisoSlopes miso_slopes(const TwoLayerAllocation& alloc, double p_s, double p_r);

/// Simplex relay (forwards both layers from X = eps2 on) with beta = alpha.
/// eps2 = 1 (or P_r = 0) reduces to direct transmission; eps2 = 0 to MISO.
ThroughputResult simplex_equal_throughput(const TwoLayerAllocation& alloc, const PowerConfig& cfg);

/// Simplex relay with its own split beta >= alpha. Throws std::invalid_argument for beta < alpha.
ThroughputResult simplex_unequal_throughput(const TwoLayerAllocation& alloc,
                                            const PowerConfig& cfg);

/// Simplex assembly at the context's X, without the degenerate-X routing.
ThroughputResult simplex_throughput_at(const BoundContext& ctx, BoundFamily family);

struct DuplexVerdict {
  /// 1 < 2 alpha_bar + Q alpha_bar^2 P_s: the relay link carries layer 2 at
  /// least as fast as layer 1, so a full-duplex relay gains nothing when R1 > R2.
  bool simplex_sufficient = false;
  /// The verdict leans on R1 > R2 at the optimum, which is conjectured, not proven.
  bool relies_on_rate_ordering = true;
  /// Whether R1 > R2 holds for this plan.
  bool rate_ordering_holds = false;
  /// Whether eps1 = eps2 for this plan (the condition the inequality guarantees).
  bool decoding_times_coincide = false;
  double margin = 0.0; ///< 2 alpha_bar + Q alpha_bar^2 P_s - 1
};
DuplexVerdict duplex_gain_condition(const TwoLayerAllocation& alloc, const PowerConfig& cfg);

} // namespace bcrelay
