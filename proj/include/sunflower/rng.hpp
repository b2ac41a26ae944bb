/*
 * Copyright (C) 2026 The sunflower-spread Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SUNFLOWER_RNG_HPP
#define SUNFLOWER_RNG_HPP

// Counter-based random numbers. Every draw is a pure function of
// (seed, stream, trial, index), so Monte Carlo results do not depend on how
// trials are scheduled across threads.
//
// Philox4x32-10 from Salmon et al., "Parallel random numbers: as easy as
// 1, 2, 3" (SC 2011).

#include <array>
#include <cstdint>

namespace sunflower {

class Philox4x32 {
public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter generate(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kW0;
        key[1] += kW1;
      }
      const std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }

private:
  static constexpr std::uint32_t kM0 = 0xD2511F53;
  static constexpr std::uint32_t kM1 = 0xCD9E8D57;
  static constexpr std::uint32_t kW0 = 0x9E3779B9;
  static constexpr std::uint32_t kW1 = 0xBB67AE85;
};

constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Identifiers separating the draws of different samplers under one seed.
enum class Stream : std::uint64_t {
  Bernoulli = 1,
  UniformSubset = 2,
  Partition = 3,
};

/// Stateless keyed generator: block(trial, index) -> 128 random bits.
class KeyedRng {
public:
  constexpr KeyedRng(std::uint64_t seed, Stream stream) {
    const std::uint64_t k = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(stream)));
    key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
  }

  [[nodiscard]] constexpr std::array<std::uint64_t, 2> block(std::uint64_t trial,
                                                             std::uint64_t index) const {
    const auto out = Philox4x32::generate(
        {static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
         static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)},
        key_);
    return {out[0] | (std::uint64_t{out[1]} << 32), out[2] | (std::uint64_t{out[3]} << 32)};
  }

  /// 64 random bits for (trial, index); two consecutive indices share a block.
  [[nodiscard]] constexpr std::uint64_t bits(std::uint64_t trial, std::uint64_t index) const {
    return block(trial, index >> 1)[index & 1];
  }

  /// Uniform double in [0, 1) with 53 random bits.
  [[nodiscard]] constexpr double uniform(std::uint64_t trial, std::uint64_t index) const {
    return static_cast<double>(bits(trial, index) >> 11) * 0x1.0p-53;
  }

private:
  Philox4x32::Key key_{};
};

/// Sequential draws within one trial, for samplers with data-dependent
/// draw counts (rejection sampling).
class TrialStream {
public:
  constexpr TrialStream(const KeyedRng& rng, std::uint64_t trial) : rng_(rng), trial_(trial) {}

  constexpr std::uint64_t next() { return rng_.bits(trial_, index_++); }

  /// Unbiased integer in [0, bound) (Lemire's multiply-and-reject).
  std::uint64_t below(std::uint64_t bound) {
    __uint128_t m = static_cast<__uint128_t>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<__uint128_t>(next()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

private:
  KeyedRng rng_;
  std::uint64_t trial_;
  std::uint64_t index_ = 0;
};

}  // namespace sunflower

#endif  // SUNFLOWER_RNG_HPP
