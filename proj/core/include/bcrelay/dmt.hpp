// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

// High-SNR behaviour of two-layer 2x1 MISO. With P_s -> inf and relay power
// c P_s, layer 2 gets P_s^alpha + (c P_s)^beta and layer 1 the rest of
// P_s (1 + c); layer i carries r_i log(P_s (1 + c)). The channel enters
// through lambda ~ Gamma(2, 1).

namespace bcrelay {

struct DmtConfig {
  double r1 = 0.0;
  double r2 = 0.0;
  double alpha_exp = 0.9;
  double beta_exp = 0.9;
  double c = 1.0; ///< relay-to-source power ratio
  std::vector<double> snr_db{40.0, 50.0, 60.0, 70.0, 80.0};

  /// Throws std::invalid_argument unless r1, r2 in [0, 1), exponents in
  /// (0, 1), c > 0 and snr_db increasing with at least 4 points.
  void validate() const;
};

/// P(lambda < x) = 1 - e^{-x} - x e^{-x}, accurate for small x.
double gamma2_cdf(double x) noexcept;

/// Outage probabilities at source power p_s (linear), using the high-SNR
/// thresholds
///   layer 1: x1 = A^{r1} / (A - A^{r1} B)   (outage 1 when A <= A^{r1} B)
///   layer 2: x2 = A^{r2} / B
/// with A = P_s (1 + c), B = P_s^alpha + (c P_s)^beta.
struct DmtOutage {
  double layer1 = 1.0;
  double layer2 = 1.0;
};
DmtOutage dmt_outage(const DmtConfig& config, double p_s);

struct DmtExponents {
  double d1 = 0.0;
  double d2 = 0.0;
  /// Outage 1 on the whole grid, or tending to 1 (r1 + max exponent >= 1).
  bool layer1_degenerate = false;
  /// As above for layer 2 (max exponent <= r2).
  bool layer2_degenerate = false;
  std::vector<double> p_out1;
  std::vector<double> p_out2;
};

/// Minus the least-squares slope of log P_out against log P_s over the grid.
DmtExponents dmt_outage_exponents(const DmtConfig& config);

enum class DmtRow { equal, alpha_dominant, beta_dominant };

/// Asymptotic average rate (in units of log(P_s(1+c))) from the closed-form
/// outage expressions of the row matching (alpha_exp, beta_exp). Outage
/// terms are clipped to [0, 1].
double dmt_average_rate(const DmtConfig& config, double p_s);
double dmt_average_rate(const DmtConfig& config, double p_s, DmtRow row);

} // namespace bcrelay
