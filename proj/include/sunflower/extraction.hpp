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

#ifndef SUNFLOWER_EXTRACTION_HPP
#define SUNFLOWER_EXTRACTION_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "sunflower/bitset.hpp"
#include "sunflower/error.hpp"
#include "sunflower/family.hpp"
#include "sunflower/probability.hpp"
#include "sunflower/rng.hpp"
#include "sunflower/spread.hpp"

namespace sunflower {

/// r(p, k) = C p ln k for k >= 2, and p for k = 1.
inline double r_threshold(std::size_t p, std::size_t k, double C) {
  require(p >= 2, "p must be at least 2");
  require(k >= 1, "k must be positive");
  require(C > 0.0, "C must be positive");
  if (k == 1) return static_cast<double>(p);
  return C * static_cast<double>(p) * std::log(static_cast<double>(k));
}

struct ExtractionParams {
  std::size_t p = 2;
  double C = 4.0;
  std::uint64_t max_partition_trials = 0;  // 0 means 64 * p
  std::uint64_t seed = 0;
  std::uint64_t fallback_bruteforce_cap = 1'000'000;
  bool fallback = true;
  std::optional<double> r_override;

  [[nodiscard]] std::uint64_t partition_trials() const {
    return max_partition_trials != 0 ? max_partition_trials : 64 * p;
  }

  void validate() const {
    require(p >= 2, "p must be at least 2");
    require(C >= 1.0, "C must be at least 1");
    if (r_override) require(*r_override > 0.0, "r override must be positive");
  }
};

// Steps of an extraction trace. Each records the uniformity k and family
// size at the level where it happened.

struct BaseStep {      // k = 1: any p singletons are pairwise disjoint
  std::size_t family_size = 0;
  bool found = false;
};
template <std::size_t W>
struct LinkStep {      // non-spread: recurse on the link of t
  std::size_t k = 0;
  std::size_t family_size = 0;
  double r = 0;
  BitSet<W> t;
  std::size_t count = 0;
};
struct SpreadStep {    // r-spread: random partition into 2p classes
  std::size_t k = 0;
  std::size_t family_size = 0;
  double r = 0;
  std::uint64_t trials_used = 0;
  bool found = false;
};
struct FallbackStep {  // exhaustive core-grouped sunflower search
  std::size_t k = 0;
  std::size_t family_size = 0;
  std::uint64_t nodes = 0;
  bool capped = false;
  bool found = false;
};
struct TooFewStep {    // fewer than p members
  std::size_t k = 0;
  std::size_t family_size = 0;
};

template <std::size_t W>
using ExtractionStep = std::variant<BaseStep, LinkStep<W>, SpreadStep, FallbackStep, TooFewStep>;

template <std::size_t W>
struct ExtractionTrace {
  ExtractionParams params;
  std::vector<ExtractionStep<W>> path;
  std::optional<Sunflower<W>> result;

  [[nodiscard]] bool success() const { return result.has_value(); }
};

template <std::size_t W>
struct SpreadSearchResult {
  std::optional<std::vector<BitSet<W>>> sets;
  std::uint64_t trials_used = 0;
};

namespace detail {

/// For one class assignment, the canonical-first member inside each class.
template <std::size_t W>
std::vector<std::optional<std::size_t>> first_member_per_class(
    const SetFamily<W>& family, std::span<const std::uint16_t> class_of, std::size_t t) {
  std::vector<std::optional<std::size_t>> pick(t);
  std::size_t filled = 0;
  for (std::size_t i = 0; i < family.size() && filled < t; ++i) {
    const auto& s = family[i];
    const std::size_t first = s.lowest();
    if (first >= BitSet<W>::kCapacity) continue;
    const auto c = class_of[first];
    if (pick[c]) continue;
    bool same = true;
    s.for_each([&](std::size_t e) { same = same && class_of[e] == c; });
    if (same) {
      pick[c] = i;
      ++filled;
    }
  }
  return pick;
}

}  // namespace detail

/**
 * Up to `trials` random partitions of the ground set into 2p classes; the
 * first partition in which at least p classes contain a member yields p
 * pairwise-disjoint members (the first p hit classes, one canonical-first
 * member each).
 */
template <std::size_t W>
SpreadSearchResult<W> spread_case_search(const SetFamily<W>& family, std::size_t p,
                                         std::uint64_t trials, std::uint64_t seed) {
  require(p >= 2, "p must be at least 2");
  SpreadSearchResult<W> res;
  const std::size_t t = 2 * p;
  std::vector<std::uint16_t> class_of;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    res.trials_used = trial + 1;
    assign_classes(family.ground_size(), t, seed, trial, class_of);
    const auto pick = detail::first_member_per_class(family, class_of, t);
    std::vector<BitSet<W>> sets;
    for (const auto& idx : pick)
      if (idx && sets.size() < p) sets.push_back(family[*idx]);
    if (sets.size() == p) {
      res.sets = std::move(sets);
      return res;
    }
  }
  return res;
}

template <std::size_t W>
struct GeneralizedSearchResult {
  std::size_t classes = 0;
  std::vector<BitSet<W>> sets;  // one per hit class, in class order
  double target = 0;            // t (1 - eps)
  bool exceeded = false;        // sets.size() > target
};

/// One random partition into t = floor(1/delta) classes; returns one member
/// per hit class.
template <std::size_t W>
GeneralizedSearchResult<W> generalized_disjoint_search(const SetFamily<W>& family, double delta,
                                                       double eps, std::uint64_t seed,
                                                       std::uint64_t trial = 0) {
  require(delta > 0.0 && delta <= 0.5, "delta must lie in (0, 1/2]");
  require(eps > 0.0 && eps < 1.0, "eps must lie in (0, 1)");
  GeneralizedSearchResult<W> res;
  res.classes = detail::floor_tol(1.0 / delta);
  require(res.classes <= 65535, "too many classes");
  res.target = static_cast<double>(res.classes) * (1.0 - eps);
  std::vector<std::uint16_t> class_of;
  assign_classes(family.ground_size(), res.classes, seed, trial, class_of);
  for (const auto& idx : detail::first_member_per_class(family, class_of, res.classes))
    if (idx) res.sets.push_back(family[*idx]);
  res.exceeded = static_cast<double>(res.sets.size()) > res.target;
  return res;
}

namespace detail {

template <std::size_t W>
std::optional<Sunflower<W>> run_fallback(const SetFamily<W>& family, const ExtractionParams& params,
                                         ExtractionTrace<W>& trace) {
  if (!params.fallback) return std::nullopt;
  auto found = find_sunflower(family, params.p, params.fallback_bruteforce_cap);
  trace.path.push_back(FallbackStep{family.k(), family.size(), found.nodes, found.capped,
                                    found.sunflower.has_value()});
  return found.sunflower;
}

template <std::size_t W>
std::optional<Sunflower<W>> extract(const SetFamily<W>& family, const ExtractionParams& params,
                                    std::size_t depth, ExtractionTrace<W>& trace) {
  const std::size_t p = params.p;
  const std::size_t k = family.k();
  if (family.size() < p) {
    trace.path.push_back(TooFewStep{k, family.size()});
    return std::nullopt;
  }
  if (k == 1) {
    trace.path.push_back(BaseStep{family.size(), true});
    return Sunflower<W>{BitSet<W>{}, std::vector<BitSet<W>>(family.begin(), family.begin() + p)};
  }

  const double r = params.r_override ? *params.r_override : r_threshold(p, k, params.C);
  const auto report = spread_witness(family, r);

  if (report.violation) {
    const auto& v = *report.violation;
    trace.path.push_back(LinkStep<W>{k, family.size(), r, v.t, v.count});
    if (auto inner = extract(link(family, v.t), params, depth + 1, trace)) {
      Sunflower<W> sf{inner->core | v.t, {}};
      for (const auto& petal : inner->petals) sf.petals.push_back(petal | v.t);
      return sf;
    }
    return run_fallback(family, params, trace);
  }

  const std::uint64_t level_seed = splitmix64(params.seed ^ (0x5bd1e995ull * (depth + 1)));
  auto search = spread_case_search(family, p, params.partition_trials(), level_seed);
  trace.path.push_back(SpreadStep{k, family.size(), r, search.trials_used, search.sets.has_value()});
  if (search.sets) return Sunflower<W>{BitSet<W>{}, std::move(*search.sets)};
  return run_fallback(family, params, trace);
}

}  // namespace detail

/**
 * Recursive sunflower extraction:
 *  - k = 1: p singletons;
 *  - family not r(p,k)-spread: recurse on the link of the first violating T
 *    and add T back to every petal;
 *  - family r(p,k)-spread: random 2p-class partitions;
 * with an exhaustive sunflower search as fallback wherever a branch fails.
 * Failure is returned as a trace without a result.
 */
template <std::size_t W>
ExtractionTrace<W> extract_sunflower(const SetFamily<W>& family, const ExtractionParams& params) {
  params.validate();
  require(!family.empty(), "extract_sunflower: empty family");
  require(family.k() >= 1, "extract_sunflower: k must be positive");
  ExtractionTrace<W> trace;
  trace.params = params;
  trace.result = detail::extract(family, params, 0, trace);
  if (trace.result) {
    const auto& sf = *trace.result;
    auto check = is_sunflower(sf.petals);
    bool ok = check && sf.petals.size() == params.p && check->core == sf.core;
    for (const auto& petal : sf.petals) ok = ok && family.contains(petal);
    if (!ok) throw std::logic_error("extract_sunflower produced an invalid sunflower");
  }
  return trace;
}

}  // namespace sunflower

#endif  // SUNFLOWER_EXTRACTION_HPP
