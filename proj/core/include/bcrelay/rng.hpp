// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string_view>

namespace bcrelay {

/// Philox4x64-10 counter-based generator (Salmon et al., Random123).
///
/// A block of four 64-bit outputs is a pure function of (key, counter), so a
/// simulation can address its random numbers by block index and get the same
/// values no matter how work is split across threads.
class Philox4x64 {
public:
  using Counter = std::array<std::uint64_t, 4>;
  using Key = std::array<std::uint64_t, 2>;

  static constexpr std::string_view name = "philox4x64-10";
  static constexpr int version = 1;

  static constexpr Counter block(Counter ctr, Key key) noexcept {
    for (int r = 0; r < 10; ++r) {
      if (r > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      ctr = round(ctr, key);
    }
    return ctr;
  }

private:
  static constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
  static constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
  static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

  static constexpr void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                                std::uint64_t& lo) noexcept {
    __extension__ using u128 = unsigned __int128;
    const u128 p = static_cast<u128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
  }

  static constexpr Counter round(const Counter& c, const Key& k) noexcept {
    std::uint64_t hi0 = 0, lo0 = 0, hi1 = 0, lo1 = 0;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
};

/// Uniform double in [0, 1) from the top 53 bits.
constexpr double to_unit_interval(std::uint64_t x) noexcept {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

/// Unit-mean exponential by inversion, -log(1 - u).
inline double unit_exponential(std::uint64_t x) noexcept {
  return -std::log1p(-to_unit_interval(x));
}

/// Addressable random stream: the draws for index `i` of stream (seed, stream_id)
/// are fixed regardless of the order in which indices are visited.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept
      : key_{seed, stream_id} {}

  Philox4x64::Counter at(std::uint64_t index) const noexcept {
    return Philox4x64::block({index, 0, 0, 0}, key_);
  }

  /// Sequential interface for callers that just want the next block.
  Philox4x64::Counter next() noexcept { return at(position_++); }

  void reset(std::uint64_t position = 0) noexcept { position_ = position; }
  std::uint64_t position() const noexcept { return position_; }
  std::uint64_t seed() const noexcept { return key_[0]; }
  std::uint64_t stream_id() const noexcept { return key_[1]; }

  /// Child stream with an independent key, derived deterministically.
  RandomStream split(std::uint64_t child) const noexcept {
    const auto mixed = Philox4x64::block({child, 0x5eed5eed5eed5eedULL, 0, 0}, key_);
    return RandomStream(mixed[0], mixed[1]);
  }

private:
  Philox4x64::Key key_;
  std::uint64_t position_ = 0;
};

} // namespace bcrelay
