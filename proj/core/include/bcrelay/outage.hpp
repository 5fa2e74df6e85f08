// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bcrelay/model.hpp"

namespace bcrelay {

/// P(nu_s P_s + nu_r P_r > u) for independent unit-mean exponentials.
///
/// Powers within a relative distance of 1e-6 use the equal-power form
/// evaluated at their mean; the difference form cancels catastrophically
/// there, and the function is symmetric in (p_s, p_r) so the mean is accurate
/// to second order.
double y_sum_tail(double u, double p_s, double p_r);

/// R * P(log(1 + nu_s P_s) > R) = R exp(-(e^R - 1)/P_s).
ThroughputResult single_user_throughput(double r, double p_s);

/// Rate maximising single_user_throughput: the root of R e^R = P_s.
double optimal_single_user_rate(double p_s);

/// Single-layer sequential decode-and-forward throughput. The relay listens
/// for a fraction eps = min(1, R / log(1 + P_s Q)) of the block and then
/// transmits as a second antenna.
ThroughputResult sdf_single_layer_throughput(double r, const PowerConfig& cfg);

/// Single-layer 2x1 MISO (relay active for the whole block).
ThroughputResult miso_single_layer_throughput(double r, double p_s, double p_r);

/// E[log(1 + nu_s P_s + nu_r P_r)].
double ergodic_miso_capacity(double p_s, double p_r);

} // namespace bcrelay
