// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>

namespace r1tc {

/// Philox4x64-10 counter-based generator (Salmon et al., SC'11).
///
/// The stream is a pure function of (key, counter), so any draw can be
/// reproduced on any platform. Every block of four 64-bit words is produced
/// by incrementing the 256-bit counter and applying ten Philox rounds.
class Philox4x64 {
 public:
  using Counter = std::array<std::uint64_t, 4>;
  using Key = std::array<std::uint64_t, 2>;

  explicit Philox4x64(std::uint64_t seed, std::uint64_t stream = 0);
  Philox4x64(Key key, Counter counter);

  /// The raw bijection: ten rounds of Philox applied to one counter block.
  static Counter block(Counter counter, Key key);

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller; one cached value per pair.
  double normal();
  /// Uniform integer in [0, bound), unbiased (rejection on the top range).
  std::uint64_t below(std::uint64_t bound);

 private:
  Key key_;
  Counter counter_;
  Counter buffer_{};
  int used_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// SplitMix64 finalizer; used to derive independent per-instance seeds.
std::uint64_t mix64(std::uint64_t x);

}  // namespace r1tc
