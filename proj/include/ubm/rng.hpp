// Copyright 2026 The ubm-toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace ubm {

/// Counter-based random stream (Philox4x64-10).
///
/// A stream is keyed by (master_seed, stream_index); the two words form the
/// Philox key directly, so distinct pairs are distinct keys and produce
/// independent sequences, while the same pair replays bit-identically.
/// Advancing a stream only increments a 256-bit counter.  Streams are cheap
/// value types: one per Monte Carlo replica, never shared across threads.
///
/// Normal variates use an in-house Box-Muller transform rather than
/// std::normal_distribution, so the sequence does not depend on the standard
/// library implementation.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
      : key_{master_seed, stream_index} {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  std::uint64_t master_seed() const { return key_[0]; }
  std::uint64_t stream_index() const { return key_[1]; }

  result_type operator()() {
    if (pos_ == 4) refill();
    return buf_[pos_++];
  }

  /// Uniform draw in (0, 1]; never returns 0, so log() is safe.
  double uniform01() {
    return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard normal variate.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

  /// Complex variate with independent standard normal real/imaginary parts.
  std::complex<double> complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

 private:
  static std::uint64_t mulhi(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) >> 64);
  }

  void refill() {
    // Philox4x64 round constants and Weyl key schedule.
    constexpr std::uint64_t kM0 = 0xD2E7470EE14C6C93ull;
    constexpr std::uint64_t kM1 = 0xCA5A826395121157ull;
    constexpr std::uint64_t kW0 = 0x9E3779B97F4A7C15ull;
    constexpr std::uint64_t kW1 = 0xBB67AE8584CAA73Bull;

    std::array<std::uint64_t, 4> x = ctr_;
    std::uint64_t k0 = key_[0];
    std::uint64_t k1 = key_[1];
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t hi0 = mulhi(kM0, x[0]);
      const std::uint64_t lo0 = kM0 * x[0];
      const std::uint64_t hi1 = mulhi(kM1, x[2]);
      const std::uint64_t lo1 = kM1 * x[2];
      x = {hi1 ^ x[1] ^ k0, lo1, hi0 ^ x[3] ^ k1, lo0};
      k0 += kW0;
      k1 += kW1;
    }
    buf_ = x;
    pos_ = 0;
    for (auto& c : ctr_) {
      if (++c != 0) break;
    }
  }

  std::array<std::uint64_t, 2> key_;
  std::array<std::uint64_t, 4> ctr_{0, 0, 0, 0};
  std::array<std::uint64_t, 4> buf_{};
  int pos_ = 4;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace ubm
