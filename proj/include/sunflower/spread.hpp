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

#ifndef SUNFLOWER_SPREAD_HPP
#define SUNFLOWER_SPREAD_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "sunflower/bitset.hpp"
#include "sunflower/error.hpp"
#include "sunflower/family.hpp"

namespace sunflower {

// A k-uniform family is r-spread when every non-empty T is contained in at
// most r^{k-|T|} members.

/// Exact number of members containing the non-empty set `t`.
template <std::size_t W>
std::size_t superset_count(const SetFamily<W>& family, const BitSet<W>& t) {
  require(!t.empty(), "superset_count: t must be non-empty");
  return count_supersets(family, t);
}

template <std::size_t W>
struct SpreadViolation {
  BitSet<W> t;
  std::size_t count = 0;
};

template <std::size_t W>
struct SpreadReport {
  double r = 0;
  std::optional<SpreadViolation<W>> violation;  // empty means certified

  [[nodiscard]] bool certified() const { return !violation.has_value(); }
};

/**
 * Superset counts of every non-empty T contained in at least one member,
 * built from the per-member power sets. Sets outside this table have count 0.
 */
template <std::size_t W>
std::vector<std::pair<BitSet<W>, std::size_t>> subset_count_table(const SetFamily<W>& family) {
  std::unordered_map<BitSet<W>, std::size_t, BitSetHash> counts;
  std::vector<unsigned> elems;
  for (const auto& s : family) {
    elems = s.elements();
    const std::size_t k = elems.size();
    require(k < 32, "spread analysis needs k < 32");
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << k); ++mask) {
      BitSet<W> t;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (std::uint32_t{1} << i)) t.set(elems[i]);
      ++counts[t];
    }
  }
  std::vector<std::pair<BitSet<W>, std::size_t>> table(counts.begin(), counts.end());
  // smallest |T| first, then smallest bit vector
  std::sort(table.begin(), table.end(), [](const auto& a, const auto& b) {
    const auto ca = a.first.count(), cb = b.first.count();
    return ca != cb ? ca < cb : a.first < b.first;
  });
  return table;
}

enum class ViolationChoice {
  First,     // smallest |T|, then smallest bit vector
  MaxRatio,  // largest count / r^{k-|T|}, ties broken as First
};

/**
 * Certify that `family` is r-spread or return a violating T with its exact
 * superset count. Comparison is count > r^{k-|T|} with no tolerance.
 */
template <std::size_t W>
SpreadReport<W> spread_witness(const SetFamily<W>& family, double r,
                               ViolationChoice choice = ViolationChoice::First) {
  require(r > 0.0, "spread_witness: r must be positive");
  require(!family.empty(), "spread_witness: empty family");
  SpreadReport<W> report{r, std::nullopt};
  const auto table = subset_count_table(family);
  const std::size_t k = family.k();
  double best_ratio = 0;
  for (const auto& [t, count] : table) {
    const double threshold = std::pow(r, static_cast<double>(k - t.count()));
    if (static_cast<double>(count) > threshold) {
      if (choice == ViolationChoice::First) {
        report.violation = SpreadViolation<W>{t, count};
        break;
      }
      const double ratio = static_cast<double>(count) / threshold;
      if (ratio > best_ratio) {
        best_ratio = ratio;
        report.violation = SpreadViolation<W>{t, count};
      }
    }
  }
  return report;
}

/**
 * Smallest r for which the family is r-spread: the maximum over non-empty T
 * with |T| < k of count(T)^{1/(k-|T|)}.
 *
 * For k = 1 the condition is vacuous (every family is r-spread for every
 * r > 0); the value returned there is |F|, the largest r with |F| >= r^k.
 */
template <std::size_t W>
double spreadness(const SetFamily<W>& family) {
  require(!family.empty(), "spreadness: empty family");
  require(family.k() >= 1, "spreadness: k must be positive");
  const std::size_t k = family.k();
  if (k == 1) return static_cast<double>(family.size());
  double best = 1.0;
  for (const auto& [t, count] : subset_count_table(family)) {
    const std::size_t j = t.count();
    if (j >= k) continue;
    const std::size_t e = k - j;
    const double c = static_cast<double>(count);
    const double ed = static_cast<double>(e);
    double root = e == 1 ? c : std::pow(c, 1.0 / ed);
    // smallest double whose e-th power reaches count, so that
    // spread_witness(F, spreadness(F)) certifies under the same pow()
    while (std::pow(root, ed) < c) root = std::nextafter(root, HUGE_VAL);
    while (root > 1.0 && std::pow(std::nextafter(root, 0.0), ed) >= c) root = std::nextafter(root, 0.0);
    best = std::max(best, root);
  }
  return best;
}

}  // namespace sunflower

#endif  // SUNFLOWER_SPREAD_HPP
