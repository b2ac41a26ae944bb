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

#ifndef SUNFLOWER_EXACT_SUN_HPP
#define SUNFLOWER_EXACT_SUN_HPP

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sunflower/bitset.hpp"
#include "sunflower/error.hpp"
#include "sunflower/family.hpp"
#include "sunflower/numeric.hpp"

namespace sunflower {

struct SunQuery {
  std::size_t p = 3;
  std::size_t k = 2;
  std::size_t ground_cap = 64;          // elements the search may introduce
  std::optional<double> time_budget;    // seconds

  void validate() const {
    require(p >= 2, "p must be at least 2");
    require(k >= 1, "k must be positive");
    require(ground_cap >= k, "ground cap must be at least k");
    require(ground_cap <= 64, "ground cap above 64 is not supported");
    if (time_budget) require(*time_budget > 0, "time budget must be positive");
  }
};

struct SunflowerFreeResult {
  std::size_t size = 0;
  SetFamily<1> witness;
  bool exhaustive = false;  // no timeout and the ground cap never cut a branch
  bool timed_out = false;
  bool cap_hit = false;
  std::uint64_t nodes = 0;
  double seconds = 0;
};

/// (p-1)^k k! + 1, saturating at UINT64_MAX.
inline std::uint64_t erdos_rado_upper(std::size_t p, std::size_t k) {
  auto base = checked_pow(p - 1, k);
  if (!base) return UINT64_MAX;
  std::uint64_t v = *base;
  for (std::size_t i = 2; i <= k; ++i) {
    if (v > UINT64_MAX / i) return UINT64_MAX;
    v *= i;
  }
  return v == UINT64_MAX ? v : v + 1;
}

/// (p-1)^k, saturating.
inline std::uint64_t erdos_rado_lower(std::size_t p, std::size_t k) {
  return checked_pow(p - 1, k).value_or(UINT64_MAX);
}

namespace detail {

/// True iff adding `s` to the sunflower-free `members` creates a p-petal
/// sunflower. Any such sunflower contains s; its core C = s ∩ T for the other
/// petals T, which must have pairwise-disjoint remainders T \ C.
inline bool closes_sunflower(const std::vector<std::uint64_t>& members, std::uint64_t s,
                             std::size_t p, std::vector<std::pair<std::uint64_t, std::uint64_t>>& scratch) {
  const std::size_t need = p - 1;
  if (need == 0) return true;
  scratch.clear();
  for (auto t : members) scratch.emplace_back(t & s, t & ~s);
  std::sort(scratch.begin(), scratch.end());
  std::vector<std::uint64_t> rests;
  for (std::size_t i = 0; i < scratch.size();) {
    std::size_t j = i;
    rests.clear();
    while (j < scratch.size() && scratch[j].first == scratch[i].first) rests.push_back(scratch[j++].second);
    if (rests.size() >= need) {
      // rests are T \ C because T ∩ s = C; look for `need` pairwise disjoint
      std::vector<std::size_t> stack;
      std::uint64_t used = 0;
      std::size_t next = 0;
      while (true) {
        if (stack.size() == need) return true;
        bool advanced = false;
        for (std::size_t q = next; q + (need - stack.size()) <= rests.size(); ++q) {
          if ((rests[q] & used) == 0) {
            stack.push_back(q);
            used |= rests[q];
            next = q + 1;
            advanced = true;
            break;
          }
        }
        if (advanced) continue;
        if (stack.empty()) break;
        const std::size_t last = stack.back();
        stack.pop_back();
        used &= ~rests[last];
        next = last + 1;
      }
    }
    i = j;
  }
  return false;
}

class SunflowerFreeSearch {
public:
  explicit SunflowerFreeSearch(const SunQuery& q)
      : q_(q), er_max_(erdos_rado_upper(q.p, q.k) - 1), start_(std::chrono::steady_clock::now()) {}

  SunflowerFreeResult run() {
    std::vector<std::uint64_t> members;
    dfs(members, 0, 0);
    SunflowerFreeResult res;
    res.size = best_.size();
    std::vector<BitSet<1>> sets;
    std::size_t span = 1;
    for (auto m : best_) {
      BitSet<1> b;
      b.set_word(0, m);
      span = std::max(span, b.span_end());
      sets.push_back(b);
    }
    res.witness = SetFamily<1>(GroundSet(span), q_.k, std::move(sets));
    res.timed_out = timed_out_;
    res.cap_hit = cap_hit_;
    res.exhaustive = !timed_out_ && (!cap_hit_ || reached_er_);
    res.nodes = nodes_;
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return res;
  }

private:
  bool out_of_time() {
    if (timed_out_) return true;
    if (q_.time_budget && (nodes_ & 0xfff) == 0) {
      const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
      if (el > *q_.time_budget) timed_out_ = true;
    }
    return timed_out_;
  }

  bool done() const { return timed_out_ || reached_er_; }

  // Sets are appended in strictly increasing bit-vector order, and each set
  // may only introduce the next unused element indices. Every family has a
  // relabelling satisfying both, so the search stays exhaustive.
  void dfs(std::vector<std::uint64_t>& members, std::size_t used, std::uint64_t last) {
    ++nodes_;
    if (out_of_time()) return;
    if (members.size() > best_.size()) {
      best_ = members;
      if (best_.size() >= er_max_) reached_er_ = true;
    }
    if (done()) return;

    const std::size_t k = q_.k;
    for (std::size_t fresh = 0; fresh <= k; ++fresh) {
      const std::size_t old = k - fresh;
      if (old > used) continue;
      if (used + fresh > q_.ground_cap) {
        cap_hit_ = true;
        continue;
      }
      const std::uint64_t new_bits = fresh == 0 ? 0 : (((fresh == 64 ? 0 : (std::uint64_t{1} << fresh)) - 1) << used);
      const std::uint64_t limit = used == 64 ? 0 : (std::uint64_t{1} << used);
      // Gosper over subsets of [0, used) of size `old`
      for (std::uint64_t a = old == 0 ? 0 : (std::uint64_t{1} << old) - 1; old == 0 || a < limit;) {
        const std::uint64_t s = a | new_bits;
        if (s > last && !closes_sunflower(members, s, q_.p, scratch_)) {
          members.push_back(s);
          dfs(members, used + fresh, s);
          members.pop_back();
          if (done()) return;
        }
        if (old == 0) break;
        const std::uint64_t c = a & (0 - a);
        const std::uint64_t r = a + c;
        a = (((r ^ a) >> 2) / c) | r;
      }
    }
  }

  SunQuery q_;
  std::uint64_t er_max_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::uint64_t> best_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> scratch_;
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
  bool cap_hit_ = false;
  bool reached_er_ = false;
};

}  // namespace detail

/**
 * Largest k-uniform family without a p-petal sunflower, by backtracking
 * with element-introduction normalization. On timeout the best family found
 * so far is returned with exhaustive = false.
 */
inline SunflowerFreeResult max_sunflower_free(const SunQuery& query) {
  query.validate();
  require(query.k < 64, "k must be below 64");
  return detail::SunflowerFreeSearch(query).run();
}

struct SunValue {
  std::size_t p = 0;
  std::size_t k = 0;
  std::uint64_t lower = 0;  // Sun(p,k) >= lower
  std::uint64_t upper = 0;  // Sun(p,k) <= upper
  bool exact = false;
  SunflowerFreeResult search;

  [[nodiscard]] std::optional<std::uint64_t> value() const {
    return exact ? std::optional<std::uint64_t>(lower) : std::nullopt;
  }
};

/// Sun(p,k) = (largest sunflower-free size) + 1 when the search is
/// exhaustive; otherwise the bracket [found + 1, (p-1)^k k! + 1].
inline SunValue sun_value(const SunQuery& query) {
  SunValue v;
  v.p = query.p;
  v.k = query.k;
  v.search = max_sunflower_free(query);
  v.lower = v.search.size + 1;
  if (v.search.exhaustive) {
    v.upper = v.lower;
    v.exact = true;
  } else {
    v.upper = erdos_rado_upper(query.p, query.k);
  }
  return v;
}

}  // namespace sunflower

#endif  // SUNFLOWER_EXACT_SUN_HPP
