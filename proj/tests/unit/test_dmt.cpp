// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "bcrelay/dmt.hpp"

namespace bcrelay {
namespace {

TEST(Gamma2, SmallArgument) {
  EXPECT_NEAR(gamma2_cdf(1e-6) / (0.5e-12), 1.0, 1e-5);
  EXPECT_NEAR(gamma2_cdf(1.0), 1.0 - 2.0 * std::exp(-1.0), 1e-15);
  EXPECT_EQ(gamma2_cdf(0.0), 0.0);
}

TEST(DmtConfig, Validate) {
  EXPECT_NO_THROW(DmtConfig{}.validate());
  DmtConfig c;
  c.r1 = 1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.snr_db = {40, 50, 60};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.snr_db = {40, 60, 50, 70};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.c = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(DmtExponents, LayerOneZeroRate) {
  DmtConfig c;
  c.alpha_exp = c.beta_exp = 0.9;
  c.r1 = 0.0;
  c.r2 = 0.1;
  const DmtExponents e = dmt_outage_exponents(c);
  EXPECT_NEAR(e.d1, 2.0, 0.1);
  EXPECT_FALSE(e.layer1_degenerate);
}

TEST(DmtExponents, LayerTwo) {
  DmtConfig c;
  c.alpha_exp = c.beta_exp = 0.8;
  c.r1 = 0.1;
  c.r2 = 0.3;
  EXPECT_NEAR(dmt_outage_exponents(c).d2, 1.0, 0.1);
}

TEST(DmtExponents, DegenerateLayerTwo) {
  DmtConfig c;
  c.alpha_exp = c.beta_exp = 0.2;
  c.r1 = 0.1;
  c.r2 = 0.5;
  const DmtExponents e = dmt_outage_exponents(c);
  EXPECT_TRUE(e.layer2_degenerate);
  EXPECT_EQ(e.d2, 0.0);
  for (double p : e.p_out2) {
    EXPECT_NEAR(p, 1.0, 1e-3);
  }
}

TEST(DmtExponents, TradeoffLines) {
  // Away from the edges r1 = 1 - alpha and r2 = alpha, where the finite-SNR
  // correction decays like P_s^{-(1 - r1 - alpha)} or P_s^{-(alpha - r2)}.
  for (double a : {0.6, 0.9}) {
    for (double r1 : {0.0, 0.1, 0.2}) {
      for (double r2 : {0.1, 0.3, 0.5}) {
        if (1.0 - r1 - a < 0.1 - 1e-12 || a - r2 < 0.1 - 1e-12) {
          continue;
        }
        DmtConfig c;
        c.alpha_exp = c.beta_exp = a;
        c.r1 = r1;
        c.r2 = r2;
        const DmtExponents e = dmt_outage_exponents(c);
        EXPECT_NEAR(e.d1 + 2.0 * r1, 2.0, 0.1) << a << " " << r1 << " " << r2;
        EXPECT_NEAR(e.d2 + 2.0 * r2, 2.0 * a, 0.1) << a << " " << r1 << " " << r2;
      }
    }
  }
}

TEST(DmtExponents, SlowConvergenceNearEdge) {
  // r1 = 0.05 with alpha = 0.9 leaves an exponent margin of only 0.05.
  DmtConfig c;
  c.alpha_exp = c.beta_exp = 0.9;
  c.r1 = 0.05;
  c.r2 = 0.1;
  const DmtExponents near = dmt_outage_exponents(c);
  c.snr_db = {160, 180, 200, 220, 240};
  const DmtExponents far = dmt_outage_exponents(c);
  EXPECT_LT(std::abs(far.d1 - 1.9), std::abs(near.d1 - 1.9));
}

TEST(DmtAverageRate, ZeroWhenLayerOneStarved) {
  DmtConfig c;
  c.alpha_exp = c.beta_exp = 0.9;
  c.r1 = 0.2;
  c.r2 = 0.1;
  EXPECT_EQ(dmt_average_rate(c, 1e6), 0.0);
}

TEST(DmtAverageRate, ApproachesSumOfRates) {
  DmtConfig c;
  c.alpha_exp = c.beta_exp = 0.6;
  c.r1 = 0.2;
  c.r2 = 0.3;
  EXPECT_NEAR(dmt_average_rate(c, 1e12), 0.5, 1e-3);
  EXPECT_LT(dmt_average_rate(c, 1e3), dmt_average_rate(c, 1e12));
}

TEST(DmtAverageRate, EqualRowDominates) {
  for (double r1 : {0.05, 0.2}) {
    for (double r2 : {0.1, 0.3}) {
      DmtConfig c;
      c.alpha_exp = c.beta_exp = 0.6;
      c.r1 = r1;
      c.r2 = r2;
      const double p = 1e6;
      const double eq = dmt_average_rate(c, p, DmtRow::equal);
      EXPECT_GE(eq, dmt_average_rate(c, p, DmtRow::alpha_dominant));
      EXPECT_GE(eq, dmt_average_rate(c, p, DmtRow::beta_dominant));
    }
  }
}

} // namespace
} // namespace bcrelay
