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

#ifndef SUNFLOWER_FAMILY_HPP
#define SUNFLOWER_FAMILY_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sunflower/bitset.hpp"
#include "sunflower/error.hpp"

namespace sunflower {

/// The ground set {0, ..., size-1}.
struct GroundSet {
  std::size_t size = 1;

  constexpr GroundSet() = default;
  explicit GroundSet(std::size_t n) : size(n) {
    require(n >= 1, "ground set must be non-empty");
    require(n <= kMaxGroundSize, "ground set larger than " + std::to_string(kMaxGroundSize));
  }

  friend bool operator==(const GroundSet&, const GroundSet&) = default;
};

/**
 * A k-uniform family of distinct sets over a ground set, stored in ascending
 * bit-vector order. Immutable after construction.
 */
template <std::size_t W>
class SetFamily {
public:
  using Set = BitSet<W>;

  SetFamily() = default;

  /// Strict constructor: rejects duplicates, wrong cardinalities and
  /// elements outside the ground set.
  SetFamily(GroundSet ground, std::size_t k, std::vector<Set> sets)
      : ground_(ground), k_(k), sets_(std::move(sets)) {
    require(ground_.size <= Set::kCapacity, "ground set exceeds bit-vector width");
    for (const auto& s : sets_) {
      require(s.fits(ground_.size), "set " + s.to_string() + " leaves the ground set");
      require(s.count() == k_, "set " + s.to_string() + " does not have " +
                                   std::to_string(k_) + " elements");
    }
    std::sort(sets_.begin(), sets_.end());
    auto dup = std::adjacent_find(sets_.begin(), sets_.end());
    require(dup == sets_.end(), "duplicate set " + (dup == sets_.end() ? "" : dup->to_string()));
  }

  /// Like the strict constructor but silently drops duplicates.
  static SetFamily deduplicated(GroundSet ground, std::size_t k, std::vector<Set> sets) {
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    return SetFamily(ground, k, std::move(sets));
  }

  [[nodiscard]] GroundSet ground() const { return ground_; }
  [[nodiscard]] std::size_t ground_size() const { return ground_.size; }
  [[nodiscard]] std::size_t k() const { return k_; }
  [[nodiscard]] std::size_t size() const { return sets_.size(); }
  [[nodiscard]] bool empty() const { return sets_.empty(); }
  [[nodiscard]] std::span<const Set> sets() const { return sets_; }
  [[nodiscard]] const Set& operator[](std::size_t i) const { return sets_[i]; }
  [[nodiscard]] auto begin() const { return sets_.begin(); }
  [[nodiscard]] auto end() const { return sets_.end(); }

  [[nodiscard]] bool contains(const Set& s) const {
    return std::binary_search(sets_.begin(), sets_.end(), s);
  }

  /// True iff some member is a subset of `sample`.
  [[nodiscard]] bool hit(const Set& sample) const {
    for (const auto& s : sets_)
      if (s.is_subset_of(sample)) return true;
    return false;
  }

  /// For a class assignment of the ground elements, mark every class that
  /// contains a whole member. Returns the number of marked classes.
  std::size_t hit_classes(std::span<const std::uint16_t> class_of,
                          std::vector<char>& hit) const {
    std::size_t n_hit = 0;
    for (const auto& s : sets_) {
      std::size_t first = s.lowest();
      if (first >= Set::kCapacity) continue;
      const std::uint16_t c = class_of[first];
      if (hit[c]) continue;
      bool same = true;
      s.for_each([&](std::size_t e) { same = same && class_of[e] == c; });
      if (same) {
        hit[c] = 1;
        ++n_hit;
      }
    }
    return n_hit;
  }

  friend bool operator==(const SetFamily&, const SetFamily&) = default;

private:
  GroundSet ground_{};
  std::size_t k_ = 0;
  std::vector<Set> sets_;
};

template <std::size_t W>
struct Sunflower {
  BitSet<W> core;
  std::vector<BitSet<W>> petals;

  [[nodiscard]] std::size_t size() const { return petals.size(); }
};

/// Intersection of two sets drawn from `ground`; rejects sets outside it.
template <std::size_t W>
BitSet<W> intersect(const BitSet<W>& a, const BitSet<W>& b, GroundSet ground) {
  require(a.fits(ground.size) && b.fits(ground.size), "sets are not over the same ground set");
  return a & b;
}

/**
 * Detects whether `sets` is a sunflower. A single set is a one-petal
 * sunflower whose core is the set itself.
 */
template <std::size_t W>
std::optional<Sunflower<W>> is_sunflower(std::span<const BitSet<W>> sets) {
  require(!sets.empty(), "is_sunflower: empty input");
  {
    std::vector<BitSet<W>> sorted(sets.begin(), sets.end());
    std::sort(sorted.begin(), sorted.end());
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
            "is_sunflower: duplicate sets");
  }
  if (sets.size() == 1) return Sunflower<W>{sets[0], {sets[0]}};

  const BitSet<W> core = sets[0] & sets[1];
  // Every pairwise intersection equals the core iff the remainders outside
  // the core are pairwise disjoint and each petal contains the core.
  BitSet<W> seen;
  for (const auto& s : sets) {
    if (!core.is_subset_of(s)) return std::nullopt;
    const BitSet<W> rest = s.minus(core);
    if (rest.intersects(seen)) return std::nullopt;
    seen |= rest;
  }
  return Sunflower<W>{core, std::vector<BitSet<W>>(sets.begin(), sets.end())};
}

template <std::size_t W>
std::optional<Sunflower<W>> is_sunflower(const std::vector<BitSet<W>>& sets) {
  return is_sunflower(std::span<const BitSet<W>>(sets));
}

/// Number of members containing `t`.
template <std::size_t W>
std::size_t count_supersets(const SetFamily<W>& family, const BitSet<W>& t) {
  std::size_t c = 0;
  for (const auto& s : family)
    if (t.is_subset_of(s)) ++c;
  return c;
}

/// The link {S \ t : S in family, t ⊆ S}, a (k-|t|)-uniform family.
template <std::size_t W>
SetFamily<W> link(const SetFamily<W>& family, const BitSet<W>& t) {
  require(!t.empty(), "link: t must be non-empty");
  require(t.count() <= family.k(), "link: |t| exceeds k");
  std::vector<BitSet<W>> out;
  for (const auto& s : family)
    if (t.is_subset_of(s)) out.push_back(s.minus(t));
  return SetFamily<W>(family.ground(), family.k() - t.count(), std::move(out));
}

/// Bookkeeping for capped exhaustive searches.
struct SearchBudget {
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t nodes = 0;
  bool exhausted = false;

  bool tick() {
    if (++nodes > limit) exhausted = true;
    return !exhausted;
  }
};

namespace detail {

template <std::size_t W>
bool disjoint_backtrack(std::span<const BitSet<W>> items, std::size_t start, std::size_t need,
                        const BitSet<W>& used, std::vector<std::size_t>& chosen,
                        SearchBudget& budget) {
  if (need == 0) return true;
  for (std::size_t i = start; i + need <= items.size(); ++i) {
    if (!budget.tick()) return false;
    if (items[i].intersects(used)) continue;
    chosen.push_back(i);
    if (disjoint_backtrack(items, i + 1, need - 1, used | items[i], chosen, budget)) return true;
    chosen.pop_back();
    if (budget.exhausted) return false;
  }
  return false;
}

}  // namespace detail

/**
 * Indices of `p` pairwise-disjoint entries of `items`, the first such tuple
 * in lexicographic index order, or nothing.
 */
template <std::size_t W>
std::optional<std::vector<std::size_t>> find_disjoint_indices(std::span<const BitSet<W>> items,
                                                              std::size_t p,
                                                              SearchBudget& budget) {
  std::vector<std::size_t> chosen;
  if (detail::disjoint_backtrack(items, 0, p, BitSet<W>{}, chosen, budget)) return chosen;
  return std::nullopt;
}

template <std::size_t W>
std::optional<std::vector<BitSet<W>>> disjoint_subfamily_bruteforce(const SetFamily<W>& family,
                                                                    std::size_t p) {
  require(p >= 1, "p must be positive");
  SearchBudget budget;
  auto idx = find_disjoint_indices(family.sets(), p, budget);
  if (!idx) return std::nullopt;
  std::vector<BitSet<W>> out;
  for (auto i : *idx) out.push_back(family[i]);
  return out;
}

template <std::size_t W>
struct SunflowerSearchResult {
  std::optional<Sunflower<W>> sunflower;
  std::uint64_t nodes = 0;
  bool capped = false;
};

/**
 * Exhaustive p-petal sunflower search grouped by candidate core. For p >= 2
 * every core is the intersection of two members, so each distinct pairwise
 * intersection C is tried in ascending order and a p-tuple of members
 * containing C with pairwise-disjoint remainders is sought.
 */
template <std::size_t W>
SunflowerSearchResult<W> find_sunflower(const SetFamily<W>& family, std::size_t p,
                                        std::uint64_t node_cap =
                                            std::numeric_limits<std::uint64_t>::max()) {
  require(p >= 1, "p must be positive");
  SunflowerSearchResult<W> result;
  if (family.size() < p) return result;
  if (p == 1) {
    result.sunflower = Sunflower<W>{family[0], {family[0]}};
    return result;
  }

  std::vector<BitSet<W>> cores;
  cores.reserve(family.size() * (family.size() - 1) / 2);
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j) cores.push_back(family[i] & family[j]);
  std::sort(cores.begin(), cores.end());
  cores.erase(std::unique(cores.begin(), cores.end()), cores.end());

  SearchBudget budget{node_cap};
  std::vector<BitSet<W>> members;
  std::vector<BitSet<W>> remainders;
  for (const auto& core : cores) {
    members.clear();
    remainders.clear();
    for (const auto& s : family) {
      if (core.is_subset_of(s)) {
        members.push_back(s);
        remainders.push_back(s.minus(core));
      }
    }
    if (members.size() < p) continue;
    auto idx = find_disjoint_indices(std::span<const BitSet<W>>(remainders), p, budget);
    if (idx) {
      Sunflower<W> sf{core, {}};
      for (auto i : *idx) sf.petals.push_back(members[i]);
      result.sunflower = std::move(sf);
      break;
    }
    if (budget.exhausted) break;
  }
  result.nodes = budget.nodes;
  result.capped = budget.exhausted;
  return result;
}

}  // namespace sunflower

#endif  // SUNFLOWER_FAMILY_HPP
