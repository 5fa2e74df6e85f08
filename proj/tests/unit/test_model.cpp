// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "bcrelay/model.hpp"
#include "bcrelay/rng.hpp"

namespace bcrelay {
namespace {

using Counter = Philox4x64::Counter;

TEST(Philox, KnownAnswerZeroKey) {
  const Counter out = Philox4x64::block({0, 0, 0, 0}, {0, 0});
  const Counter want{0x16554d9eca36314cULL, 0xdb20fe9d672d0fdcULL, 0xd7e772cee186176bULL,
                     0x7e68b68aec7ba23bULL};
  EXPECT_EQ(out, want);
}

TEST(Philox, KnownAnswerNumpyKey) {
  // numpy.random.Philox(key=0x99 << 64, counter=0) emits block 1 first.
  const Counter out = Philox4x64::block({1, 0, 0, 0}, {0, 0x99});
  const Counter want{0x8987c36d1539b85fULL, 0x96cb0f69ab22c7beULL, 0xf19a410d3d1dc473ULL,
                     0xc016b028315a860dULL};
  EXPECT_EQ(out, want);
}

TEST(Philox, KnownAnswerMixedKey) {
  const Counter out = Philox4x64::block({6, 0, 0, 0}, {0x0123456789abcdefULL, 0x99});
  const Counter want{0xea24ebef297b89b0ULL, 0x270a13d8b27e7168ULL, 0x33db7e05198484c6ULL,
                     0x1c16fb6dc6c2cfdbULL};
  EXPECT_EQ(out, want);
}

TEST(Philox, IsConstexpr) {
  constexpr Counter c = Philox4x64::block({0, 0, 0, 0}, {0, 0});
  static_assert(c[0] == 0x16554d9eca36314cULL);
  SUCCEED();
}

TEST(RandomStream, DrawsDifferAndResetReplays) {
  RandomStream rng(42);
  const FadingSample a = sample_fading(rng);
  const FadingSample b = sample_fading(rng);
  EXPECT_NE(a.nu_s, b.nu_s);
  rng.reset();
  const FadingSample a2 = sample_fading(rng);
  const FadingSample b2 = sample_fading(rng);
  EXPECT_EQ(a.nu_s, a2.nu_s);
  EXPECT_EQ(a.nu_r, a2.nu_r);
  EXPECT_EQ(b.nu_s, b2.nu_s);
}

TEST(RandomStream, AddressableIndependentOfOrder) {
  const RandomStream rng(9, 3);
  const FadingSample late = fading_at(rng, 1000);
  RandomStream seq(9, 3);
  seq.reset(1000);
  const FadingSample s = sample_fading(seq);
  EXPECT_EQ(late.nu_s, s.nu_s);
  EXPECT_EQ(late.nu_r, s.nu_r);
}

TEST(RandomStream, SplitIsDeterministicAndDistinct) {
  const RandomStream root(7);
  EXPECT_EQ(root.split(1).seed(), root.split(1).seed());
  EXPECT_NE(root.split(1).seed(), root.split(2).seed());
  EXPECT_NE(root.split(1).at(0), root.at(0));
}

TEST(RandomStream, UnitInterval) {
  EXPECT_EQ(to_unit_interval(0), 0.0);
  EXPECT_LT(to_unit_interval(~0ULL), 1.0);
  EXPECT_TRUE(std::isfinite(unit_exponential(~0ULL)));
}

TEST(Fading, UnitMeanAndTail) {
  const RandomStream rng(2024);
  const int n = 1'000'000;
  double sum = 0.0;
  int above = 0;
  for (int i = 0; i < n; ++i) {
    const double v = fading_at(rng, static_cast<std::uint64_t>(i)).nu_s;
    sum += v;
    above += v > 1.0 ? 1 : 0;
  }
  EXPECT_NEAR(sum / n, 1.0, 0.005);
  EXPECT_NEAR(static_cast<double>(above) / n, std::exp(-1.0), 0.002);
}

TEST(PowerConfig, Validate) {
  EXPECT_NO_THROW((PowerConfig{1, 0, 0}.validate()));
  EXPECT_THROW((PowerConfig{-1, 1, 1}.validate()), std::invalid_argument);
  EXPECT_THROW((PowerConfig{1, NAN, 1}.validate()), std::invalid_argument);
  EXPECT_THROW((PowerConfig{1, 1, INFINITY}.validate()), std::invalid_argument);
}

TEST(Allocation, Validate) {
  EXPECT_NO_THROW((TwoLayerAllocation{0.5, 0.7, 1, 2}.validate()));
  EXPECT_THROW((TwoLayerAllocation{1.5, 1, 1, 2}.validate()), std::invalid_argument);
  EXPECT_THROW((TwoLayerAllocation{0.5, 0.5, 2, 1}.validate()), std::invalid_argument);
  EXPECT_THROW((TwoLayerAllocation{0.5, 0.5, -1, 1}.validate()), std::invalid_argument);
  EXPECT_EQ((TwoLayerAllocation{0.3, 0.9, 1, 2}.with_equal_split().beta), 0.3);
}

TEST(LayerRates, AllPowerToFirstLayer) {
  const LayerRates r = layer_rates({1.0, 1.0, 0.7, 3.0}, 10.0);
  EXPECT_DOUBLE_EQ(r.r1, std::log(1.0 + 7.0));
  EXPECT_EQ(r.r2, 0.0);
}

TEST(LayerRates, ZeroThreshold) {
  EXPECT_EQ(layer_rates({0.5, 0.5, 0.0, 2.0}, 10.0).r1, 0.0);
}

TEST(LayerRates, WorkedExample) {
  const LayerRates r = layer_rates({0.5, 0.5, 1.0, 2.0}, 10.0);
  EXPECT_NEAR(r.r1, std::log(11.0 / 6.0), 1e-12);
  EXPECT_NEAR(r.r2, std::log(11.0), 1e-12);
  EXPECT_NEAR(r.r1, 0.6061, 1e-4);
  EXPECT_NEAR(r.r2, 2.3979, 1e-4);
}

TEST(DecodingTimes, WorkedExample) {
  const DecodingTimes d = decoding_times(0.5, 0.1, 0.5, {1.0, 1.0, 10.0});
  EXPECT_NEAR(d.eps1, 0.5 / std::log(1.0 + 5.0 / 6.0), 1e-12);
  EXPECT_NEAR(d.eps1, 0.825, 1e-3);
  EXPECT_GE(d.eps2, d.eps1);
}

TEST(DecodingTimes, SingleLayerCollapse) {
  const PowerConfig cfg{2.0, 1.0, 3.0};
  const DecodingTimes d = decoding_times(1.2, 0.0, 1.0, cfg);
  EXPECT_NEAR(d.eps1, single_layer_decoding_time(1.2, 2.0, 3.0), 1e-15);
  EXPECT_NEAR(d.eps1, std::min(1.0, 1.2 / std::log(1.0 + 6.0)), 1e-15);
}

TEST(DecodingTimes, LargeCollocationGainLimit) {
  const double r1 = 0.3;
  const double alpha = 0.6;
  const DecodingTimes d = decoding_times(r1, 0.2, alpha, {1.0, 1.0, 1e12});
  const double limit = std::min(1.0, r1 / std::log(1.0 / (1.0 - alpha)));
  EXPECT_NEAR(d.eps1, limit, 1e-9);
  EXPECT_GT(d.eps1, 0.0);
}

TEST(DecodingTimes, SaturateAtOne) {
  const DecodingTimes d = decoding_times(5.0, 5.0, 0.5, {1.0, 1.0, 1.0});
  EXPECT_EQ(d.eps1, 1.0);
  EXPECT_EQ(d.eps2, 1.0);
  const DecodingTimes none = decoding_times(0.5, 0.5, 0.5, {1.0, 1.0, 0.0});
  EXPECT_EQ(none.eps1, 1.0);
  EXPECT_EQ(none.eps2, 1.0);
}

TEST(ThroughputResult, Decomposition) {
  const auto r = ThroughputResult::from_probabilities(1.0, 2.0, 0.5, 0.25);
  EXPECT_DOUBLE_EQ(r.r_av, 1.0 * 0.5 + 2.0 * 0.25);
  const auto s = ThroughputResult::single_layer(1.5, 0.4);
  EXPECT_DOUBLE_EQ(s.r_av, 0.6);
  EXPECT_EQ(s.r2, 0.0);
}

} // namespace
} // namespace bcrelay
