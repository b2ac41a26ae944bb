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

#ifndef SUNFLOWER_CONSTRUCTIONS_HPP
#define SUNFLOWER_CONSTRUCTIONS_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sunflower/bitset.hpp"
#include "sunflower/error.hpp"
#include "sunflower/family.hpp"
#include "sunflower/numeric.hpp"

namespace sunflower {

/// Constructions refuse to materialize more sets than this.
inline constexpr std::uint64_t kFamilySizeCap = std::uint64_t{1} << 24;

/// Blocks V_i = {i*r, ..., (i+1)*r - 1} for i = 0..k-1.
struct BlockPartition {
  std::size_t k = 0;
  std::size_t r = 0;

  [[nodiscard]] std::size_t ground_size() const { return k * r; }
  [[nodiscard]] std::size_t block_of(std::size_t element) const { return element / r; }

  template <std::size_t W>
  [[nodiscard]] BitSet<W> block(std::size_t i) const {
    BitSet<W> b;
    for (std::size_t e = i * r; e < (i + 1) * r; ++e) b.set(e);
    return b;
  }
};

inline BlockPartition make_block_partition(std::size_t k, std::size_t r) {
  require(k >= 1, "k must be positive");
  require(r >= 1, "r must be positive");
  require(k * r <= kMaxGroundSize, "block partition larger than " + std::to_string(kMaxGroundSize) + " elements");
  return BlockPartition{k, r};
}

/// Calls f(const BitSet<W>&) for every transversal, in mixed-radix order with
/// the last block varying fastest. No size cap.
template <std::size_t W, typename F>
void for_each_transversal(const BlockPartition& part, F&& f) {
  require(part.ground_size() <= BitSet<W>::kCapacity, "ground set exceeds bit-vector width");
  std::vector<std::size_t> digit(part.k, 0);
  while (true) {
    BitSet<W> s;
    for (std::size_t i = 0; i < part.k; ++i) s.set(i * part.r + digit[i]);
    f(s);
    std::size_t i = part.k;
    while (i > 0) {
      --i;
      if (++digit[i] < part.r) break;
      digit[i] = 0;
      if (i == 0) return;
    }
    if (part.k == 0) return;
  }
}

/**
 * All r^k transversals of the block partition of {0, ..., rk-1}.
 * Throws CapacityExceeded beyond kFamilySizeCap; use BlockProductView or
 * for_each_transversal for larger parameters.
 */
template <std::size_t W>
std::pair<SetFamily<W>, BlockPartition> block_product_family(std::size_t k, std::size_t r) {
  const BlockPartition part = make_block_partition(k, r);
  require(part.ground_size() <= BitSet<W>::kCapacity, "ground set exceeds bit-vector width");
  auto size = checked_pow(r, k);
  if (!size || *size > kFamilySizeCap)
    throw CapacityExceeded("block-product family r^k = " + std::to_string(r) + "^" +
                           std::to_string(k) + " exceeds the cap of 2^24 sets; use the "
                           "streaming view (BlockProductView / for_each_transversal)");
  std::vector<BitSet<W>> sets;
  sets.reserve(*size);
  for_each_transversal<W>(part, [&](const BitSet<W>& s) { sets.push_back(s); });
  return {SetFamily<W>(GroundSet(part.ground_size()), k, std::move(sets)), part};
}

/// Family of (p-1)^k transversals; contains no p-petal sunflower.
template <std::size_t W>
SetFamily<W> erdos_rado_lower_family(std::size_t p, std::size_t k) {
  require(p >= 2, "p must be at least 2");
  return block_product_family<W>(k, p - 1).first;
}

/**
 * Implicit block-product family. Answers hit queries from the block
 * structure: a sample contains a transversal iff it meets every block.
 */
template <std::size_t W>
class BlockProductView {
public:
  using Set = BitSet<W>;

  BlockProductView(std::size_t k, std::size_t r) : part_(make_block_partition(k, r)) {
    require(part_.ground_size() <= Set::kCapacity, "ground set exceeds bit-vector width");
    for (std::size_t i = 0; i < k; ++i) blocks_.push_back(part_.template block<W>(i));
  }

  [[nodiscard]] const BlockPartition& partition() const { return part_; }
  [[nodiscard]] std::size_t ground_size() const { return part_.ground_size(); }
  [[nodiscard]] std::size_t k() const { return part_.k; }

  [[nodiscard]] bool hit(const Set& sample) const {
    for (const auto& b : blocks_)
      if (!b.intersects(sample)) return false;
    return true;
  }

  std::size_t hit_classes(std::span<const std::uint16_t> class_of, std::vector<char>& hit) const {
    const std::size_t t = hit.size();
    // seen[block * t + class]
    std::vector<char> seen(part_.k * t, 0);
    for (std::size_t e = 0; e < part_.ground_size(); ++e) seen[part_.block_of(e) * t + class_of[e]] = 1;
    std::size_t n_hit = 0;
    for (std::size_t c = 0; c < t; ++c) {
      bool all = true;
      for (std::size_t i = 0; i < part_.k && all; ++i) all = seen[i * t + c] != 0;
      if (all && !hit[c]) {
        hit[c] = 1;
        ++n_hit;
      }
    }
    return n_hit;
  }

private:
  BlockPartition part_;
  std::vector<Set> blocks_;
};

inline void require_open_probability(double delta) {
  require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
}

/// (1 - (1-delta)^r)^k: probability that X_delta meets every block.
inline double exact_block_hit_probability(std::size_t k, std::size_t r, double delta) {
  require(k >= 1 && r >= 1, "k and r must be positive");
  require_open_probability(delta);
  return std::pow(1.0 - std::pow(1.0 - delta, static_cast<double>(r)), static_cast<double>(k));
}

inline void require_lemma3_ranges(std::size_t k, std::size_t r, double delta, double eps) {
  require(k >= 1 && r >= 1, "k and r must be positive");
  require(delta > 0.0 && delta <= 0.5, "delta must lie in (0, 1/2]");
  require(eps > 0.0 && eps <= 0.5, "eps must lie in (0, 1/2]");
}

/// 0.25 * delta^{-1} * ln(k / eps)
inline double lemma3_r_bound(std::size_t k, double delta, double eps) {
  return 0.25 / delta * std::log(static_cast<double>(k) / eps);
}

/// True iff r lies in the regime where the block-product family is a
/// counterexample at (delta, eps): r <= 0.25 delta^{-1} ln(k/eps).
inline bool lemma3_regime_check(std::size_t k, std::size_t r, double delta, double eps) {
  require_lemma3_ranges(k, r, delta, eps);
  return static_cast<double>(r) <= lemma3_r_bound(k, delta, eps);
}

/**
 * The inequality chain bounding the block-product hit probability:
 *   (1-(1-d)^r)^k <= e^{-(1-d)^r k} < e^{-e^{-2dr} k} <= e^{-sqrt(eps k)} < 1-eps
 */
struct Lemma3Chain {
  double exact = 0;        // (1-(1-d)^r)^k
  double exp_bound = 0;    // e^{-(1-d)^r k}
  double exp_weaker = 0;   // e^{-e^{-2dr} k}
  double sqrt_bound = 0;   // e^{-sqrt(eps k)}
  double target = 0;       // 1 - eps
  bool link1 = false;      // exact <= exp_bound
  bool link2 = false;      // exp_bound < exp_weaker
  bool link3 = false;      // exp_weaker <= sqrt_bound
  bool link4 = false;      // sqrt_bound < target

  [[nodiscard]] bool holds() const { return link1 && link2 && link3 && link4; }
};

inline Lemma3Chain lemma3_chain(std::size_t k, std::size_t r, double delta, double eps) {
  require_lemma3_ranges(k, r, delta, eps);
  const double kd = static_cast<double>(k);
  const double rd = static_cast<double>(r);
  const double miss = std::pow(1.0 - delta, rd);
  Lemma3Chain c;
  c.exact = exact_block_hit_probability(k, r, delta);
  c.exp_bound = std::exp(-miss * kd);
  c.exp_weaker = std::exp(-std::exp(-2.0 * delta * rd) * kd);
  c.sqrt_bound = std::exp(-std::sqrt(eps * kd));
  c.target = 1.0 - eps;
  c.link1 = c.exact <= c.exp_bound;
  c.link2 = c.exp_bound < c.exp_weaker;
  c.link3 = c.exp_weaker <= c.sqrt_bound;
  c.link4 = c.sqrt_bound < c.target;
  return c;
}

}  // namespace sunflower

#endif  // SUNFLOWER_CONSTRUCTIONS_HPP
