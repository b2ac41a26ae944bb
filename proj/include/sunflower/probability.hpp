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

#ifndef SUNFLOWER_PROBABILITY_HPP
#define SUNFLOWER_PROBABILITY_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/distributions/binomial.hpp>

#include "sunflower/bitset.hpp"
#include "sunflower/constructions.hpp"
#include "sunflower/error.hpp"
#include "sunflower/family.hpp"
#include "sunflower/numeric.hpp"
#include "sunflower/rng.hpp"

namespace sunflower {

/// Anything that can answer "does this sample contain a member?",
/// such as SetFamily for explicit families, BlockProductView for implicit ones.
template <typename F>
concept HitFamily = requires(const F& f, const typename F::Set& s,
                             std::span<const std::uint16_t> classes, std::vector<char>& hit) {
  { f.ground_size() } -> std::convertible_to<std::size_t>;
  { f.hit(s) } -> std::convertible_to<bool>;
  { f.hit_classes(classes, hit) } -> std::convertible_to<std::size_t>;
};

// ---------------------------------------------------------------------------
// Samplers

struct BernoulliSubsetParams {
  double delta = 0.5;
  std::uint64_t seed = 0;

  BernoulliSubsetParams(double d, std::uint64_t s) : delta(d), seed(s) {
    require_open_probability(delta);
  }
};

/// X_delta: every element independently with probability delta. Element e of
/// trial i is decided by the keyed draw (seed, i, e).
template <std::size_t W>
BitSet<W> sample_bernoulli_subset(GroundSet ground, const BernoulliSubsetParams& params,
                                  std::uint64_t trial) {
  require(ground.size <= BitSet<W>::kCapacity, "ground set exceeds bit-vector width");
  const KeyedRng rng(params.seed, Stream::Bernoulli);
  BitSet<W> s;
  for (std::size_t e = 0; e < ground.size; ++e)
    if (rng.uniform(trial, e) < params.delta) s.set(e);
  return s;
}

/// X_m: uniform over all m-element subsets (Floyd's algorithm).
template <std::size_t W>
BitSet<W> sample_uniform_m_subset(GroundSet ground, std::size_t m, std::uint64_t seed,
                                  std::uint64_t trial) {
  require(m <= ground.size, "m out of range [0, |X|]");
  require(ground.size <= BitSet<W>::kCapacity, "ground set exceeds bit-vector width");
  TrialStream stream(KeyedRng(seed, Stream::UniformSubset), trial);
  BitSet<W> s;
  for (std::size_t j = ground.size - m; j < ground.size; ++j) {
    const auto t = static_cast<std::size_t>(stream.below(j + 1));
    if (s.test(t))
      s.set(j);
    else
      s.set(t);
  }
  return s;
}

/// Uniform class in [0, t) for every ground element.
inline void assign_classes(std::size_t ground_size, std::size_t t, std::uint64_t seed,
                           std::uint64_t trial, std::vector<std::uint16_t>& class_of) {
  TrialStream stream(KeyedRng(seed, Stream::Partition), trial);
  class_of.resize(ground_size);
  for (std::size_t e = 0; e < ground_size; ++e)
    class_of[e] = static_cast<std::uint16_t>(stream.below(t));
}

namespace detail {

/// Runs body(begin, end) -> T over contiguous trial ranges on `threads`
/// workers and sums the partial results in range order.
template <typename T, typename Body>
T parallel_sum(std::uint64_t trials, unsigned threads, Body body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(trials, 256))));
  if (threads == 1) return body(0, trials);
  std::vector<T> partial(threads);
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (trials + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const std::uint64_t b = std::min(trials, w * chunk), e = std::min(trials, b + chunk);
    pool.emplace_back([&, w, b, e] { partial[w] = body(b, e); });
  }
  for (auto& th : pool) th.join();
  T total{};
  for (auto& p : partial) total += p;
  return total;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Hit probability Pr(exists S in family : S ⊆ X_delta)

enum class HitMethod { ExactEnumeration, InclusionExclusion, MonteCarlo };

inline std::string to_string(HitMethod m) {
  switch (m) {
    case HitMethod::ExactEnumeration: return "exact-enumeration";
    case HitMethod::InclusionExclusion: return "inclusion-exclusion";
    case HitMethod::MonteCarlo: return "monte-carlo";
  }
  return "?";
}

struct HitEstimate {
  double p_hat = 0;
  std::uint64_t trials = 0;
  double half_width_3sigma = 0;
  HitMethod method = HitMethod::ExactEnumeration;
  std::uint64_t hits = 0;
  // Clopper-Pearson interval at the 3-sigma level (0.9973), when requested.
  std::optional<std::pair<double, double>> clopper_pearson;
};

inline constexpr std::size_t kEnumerationMaxGround = 24;
inline constexpr std::size_t kInclusionExclusionMaxFamily = 20;

/**
 * Number of i-element subsets of the ground set that contain a member, for
 * i = 0..n. Marks members in a 2^n table and closes it upward.
 */
template <std::size_t W>
std::vector<std::uint64_t> hit_counts_by_size(const SetFamily<W>& family) {
  const std::size_t n = family.ground_size();
  if (n > kEnumerationMaxGround)
    throw CapacityExceeded("exact enumeration needs |X| <= " + std::to_string(kEnumerationMaxGround));
  const std::uint64_t full = std::uint64_t{1} << n;
  std::vector<std::uint8_t> up(full, 0);
  for (const auto& s : family) up[s.word(0)] = 1;
  for (std::size_t b = 0; b < n; ++b) {
    const std::uint64_t bit = std::uint64_t{1} << b;
    for (std::uint64_t mask = 0; mask < full; ++mask)
      if (!(mask & bit)) up[mask | bit] |= up[mask];
  }
  std::vector<std::uint64_t> counts(n + 1, 0);
  for (std::uint64_t mask = 0; mask < full; ++mask)
    if (up[mask]) ++counts[static_cast<std::size_t>(std::popcount(mask))];
  return counts;
}

template <std::size_t W>
double hit_probability_enumeration(const SetFamily<W>& family, double delta) {
  require_open_probability(delta);
  const auto counts = hit_counts_by_size(family);
  const std::size_t n = family.ground_size();
  CompensatedSum sum;
  for (std::size_t i = 0; i <= n; ++i)
    if (counts[i] != 0)
      sum.add(static_cast<double>(counts[i]) * std::pow(delta, static_cast<double>(i)) *
              std::pow(1.0 - delta, static_cast<double>(n - i)));
  return sum.value();
}

namespace detail {

template <std::size_t W>
void inclusion_exclusion(std::span<const BitSet<W>> sets, std::size_t next, const BitSet<W>& uni,
                         std::size_t chosen, std::span<const double> delta_pow,
                         CompensatedSum& sum) {
  for (std::size_t i = next; i < sets.size(); ++i) {
    const BitSet<W> u = uni | sets[i];
    const double term = delta_pow[u.count()];
    sum.add((chosen % 2 == 0) ? term : -term);  // |G| = chosen + 1
    inclusion_exclusion(sets, i + 1, u, chosen + 1, delta_pow, sum);
  }
}

}  // namespace detail

/// Sum over non-empty subfamilies G of (-1)^{|G|+1} delta^{|∪G|}.
template <std::size_t W>
double hit_probability_inclusion_exclusion(const SetFamily<W>& family, double delta) {
  require_open_probability(delta);
  if (family.size() > kInclusionExclusionMaxFamily)
    throw CapacityExceeded("inclusion-exclusion needs |family| <= " +
                           std::to_string(kInclusionExclusionMaxFamily));
  std::vector<double> delta_pow(family.ground_size() + 1);
  for (std::size_t i = 0; i < delta_pow.size(); ++i) delta_pow[i] = std::pow(delta, static_cast<double>(i));
  CompensatedSum sum;
  detail::inclusion_exclusion(family.sets(), 0, BitSet<W>{}, 0, delta_pow, sum);
  return std::clamp(sum.value(), 0.0, 1.0);
}

enum class ExactPath { Auto, Enumeration, InclusionExclusion };

/// Exact hit probability; Auto prefers enumeration when |X| <= 24.
template <std::size_t W>
HitEstimate exact_hit_probability(const SetFamily<W>& family, double delta,
                                  ExactPath path = ExactPath::Auto) {
  require_open_probability(delta);
  const bool can_enumerate = family.ground_size() <= kEnumerationMaxGround;
  const bool can_ie = family.size() <= kInclusionExclusionMaxFamily;
  if (path == ExactPath::Auto) {
    if (!can_enumerate && !can_ie)
      throw CapacityExceeded("exact hit probability needs |X| <= 24 or |family| <= 20");
    path = can_enumerate ? ExactPath::Enumeration : ExactPath::InclusionExclusion;
  }
  HitEstimate est;
  if (path == ExactPath::Enumeration) {
    est.p_hat = hit_probability_enumeration(family, delta);
    est.method = HitMethod::ExactEnumeration;
  } else {
    est.p_hat = hit_probability_inclusion_exclusion(family, delta);
    est.method = HitMethod::InclusionExclusion;
  }
  return est;
}

/// Clopper-Pearson two-sided interval at confidence 0.9973 (matching 3 sigma).
inline std::pair<double, double> clopper_pearson_3sigma(std::uint64_t hits, std::uint64_t trials) {
  using boost::math::binomial_distribution;
  constexpr double alpha = 1.0 - 0.99730020393673979;
  const double n = static_cast<double>(trials), x = static_cast<double>(hits);
  const double lo = hits == 0 ? 0.0
                              : binomial_distribution<>::find_lower_bound_on_p(n, x, alpha / 2);
  const double hi = hits == trials ? 1.0
                                   : binomial_distribution<>::find_upper_bound_on_p(n, x, alpha / 2);
  return {lo, hi};
}

inline HitEstimate make_mc_estimate(std::uint64_t hits, std::uint64_t trials, bool with_cp) {
  HitEstimate est;
  est.method = HitMethod::MonteCarlo;
  est.trials = trials;
  est.hits = hits;
  est.p_hat = static_cast<double>(hits) / static_cast<double>(trials);
  // normal approximation; degenerate (0 width) when p_hat is 0 or 1
  est.half_width_3sigma = 3.0 * std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(trials));
  if (with_cp) est.clopper_pearson = clopper_pearson_3sigma(hits, trials);
  return est;
}

struct McOptions {
  unsigned threads = 1;
  bool clopper_pearson = false;
};

/**
 * Fraction of trials whose X_delta contains a member. Trial i uses the
 * keyed draws (seed, i, *), so the estimate is identical for any thread
 * count.
 */
template <HitFamily F>
HitEstimate mc_hit_probability(const F& family, double delta, std::uint64_t trials,
                               std::uint64_t seed, McOptions opts = {}) {
  using Set = typename F::Set;
  require(trials >= 1, "trials must be positive");
  const BernoulliSubsetParams params(delta, seed);
  const GroundSet ground(family.ground_size());
  const auto hits = detail::parallel_sum<std::uint64_t>(
      trials, opts.threads, [&](std::uint64_t b, std::uint64_t e) {
        std::uint64_t h = 0;
        for (std::uint64_t i = b; i < e; ++i)
          if (family.hit(sample_bernoulli_subset<Set::kWords>(ground, params, i))) ++h;
        return h;
      });
  return make_mc_estimate(hits, trials, opts.clopper_pearson);
}

// ---------------------------------------------------------------------------
// Random partition experiment

struct PartitionStats {
  std::size_t classes = 0;
  std::uint64_t trials = 0;
  double mean_hit_classes = 0;
  double stddev_hit_classes = 0;  // sample standard deviation over trials
  // threshold p -> fraction of trials with at least p hit classes, p = 1..t
  std::map<std::size_t, double> frac_trials_with_at_least;

  [[nodiscard]] double sigma_of_mean() const {
    return stddev_hit_classes / std::sqrt(static_cast<double>(trials));
  }
};

namespace detail {

struct PartitionTally {
  std::uint64_t sum = 0;
  std::uint64_t sum_sq = 0;
  std::vector<std::uint64_t> histogram;  // trials with exactly i hit classes

  PartitionTally& operator+=(const PartitionTally& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
    if (histogram.size() < o.histogram.size()) histogram.resize(o.histogram.size(), 0);
    for (std::size_t i = 0; i < o.histogram.size(); ++i) histogram[i] += o.histogram[i];
    return *this;
  }
};

}  // namespace detail

/// Number of classes (out of t) that contain a member, for one trial.
template <HitFamily F>
std::size_t partition_hit_count(const F& family, std::size_t t, std::uint64_t seed,
                                std::uint64_t trial, std::vector<std::uint16_t>& class_of,
                                std::vector<char>& hit) {
  assign_classes(family.ground_size(), t, seed, trial, class_of);
  hit.assign(t, 0);
  return family.hit_classes(class_of, hit);
}

/**
 * Each trial places every ground element in one of t classes uniformly at
 * random and counts the classes containing a whole member.
 */
template <HitFamily F>
PartitionStats partition_experiment(const F& family, std::size_t t, std::uint64_t trials,
                                    std::uint64_t seed, unsigned threads = 1) {
  require(t >= 2, "partition needs at least 2 classes");
  require(t <= 65535, "too many classes");
  require(trials >= 1, "trials must be positive");
  const auto tally = detail::parallel_sum<detail::PartitionTally>(
      trials, threads, [&](std::uint64_t b, std::uint64_t e) {
        detail::PartitionTally local;
        local.histogram.assign(t + 1, 0);
        std::vector<std::uint16_t> class_of;
        std::vector<char> hit;
        for (std::uint64_t i = b; i < e; ++i) {
          const std::uint64_t h = partition_hit_count(family, t, seed, i, class_of, hit);
          local.sum += h;
          local.sum_sq += h * h;
          ++local.histogram[h];
        }
        return local;
      });
  PartitionStats stats;
  stats.classes = t;
  stats.trials = trials;
  const double n = static_cast<double>(trials);
  stats.mean_hit_classes = static_cast<double>(tally.sum) / n;
  if (trials > 1) {
    const double var = (static_cast<double>(tally.sum_sq) - n * stats.mean_hit_classes * stats.mean_hit_classes) / (n - 1);
    stats.stddev_hit_classes = std::sqrt(std::max(0.0, var));
  }
  std::uint64_t at_least = 0;
  for (std::size_t p = t; p >= 1; --p) {
    at_least += tally.histogram[p];
    stats.frac_trials_with_at_least[p] = static_cast<double>(at_least) / n;
  }
  return stats;
}

/// Partition mean against t * Pr(hit at delta = 1/t): each class is
/// distributed as X_{1/t}, so E[#hit classes] = t * Pr(class 1 hit).
struct Lemma2Report {
  std::size_t classes = 0;
  std::uint64_t trials = 0;
  double measured_mean = 0;
  double exact_per_class = 0;
  double expected_mean = 0;
  double sigma_of_mean = 0;
  double deviation = 0;
  bool passed = false;
};

template <std::size_t W>
Lemma2Report lemma2_identity_check(const SetFamily<W>& family, std::size_t t, std::uint64_t trials,
                                   std::uint64_t seed, unsigned threads = 1) {
  require(t >= 2, "partition needs at least 2 classes");
  const double q = exact_hit_probability(family, 1.0 / static_cast<double>(t)).p_hat;
  const auto stats = partition_experiment(family, t, trials, seed, threads);
  Lemma2Report rep;
  rep.classes = t;
  rep.trials = trials;
  rep.measured_mean = stats.mean_hit_classes;
  rep.exact_per_class = q;
  rep.expected_mean = static_cast<double>(t) * q;
  rep.sigma_of_mean = stats.sigma_of_mean();
  rep.deviation = std::abs(rep.measured_mean - rep.expected_mean);
  rep.passed = rep.deviation <= 3.0 * rep.sigma_of_mean;
  return rep;
}

// ---------------------------------------------------------------------------
// Random-subset coupling: Pr(hit | X_delta) >= Pr(hit | X_m) * Pr(|X_delta| >= m)

namespace detail {

// Rounding of products such as (delta/2)*n that are integral in exact
// arithmetic but may land an ulp off in floating point.
inline std::size_t ceil_tol(double x) { return static_cast<std::size_t>(std::ceil(x - 1e-9 * std::max(1.0, x))); }
inline std::size_t floor_tol(double x) { return static_cast<std::size_t>(std::floor(x + 1e-9 * std::max(1.0, x))); }

}  // namespace detail

struct AppendixParams {
  double delta = 0;
  double gamma = 0;
  std::size_t m = 0;
};

inline AppendixParams make_appendix_params(std::size_t n, double delta) {
  require_open_probability(delta);
  AppendixParams a;
  a.delta = delta;
  a.gamma = delta / 2;
  a.m = detail::ceil_tol(a.gamma * static_cast<double>(n));
  return a;
}

inline constexpr std::size_t kAppendixMaxGround = 20;
/// Slack for comparing two independently rounded exact probabilities.
inline constexpr double kExactComparisonSlack = 1e-12;

struct AppendixReport {
  std::size_t ground_size = 0;
  AppendixParams params;
  double lhs = 0;                    // Pr(hit | X_delta)
  double hit_given_m = 0;            // Pr(hit | X_m)
  double size_at_least_m = 0;        // Pr(|X_delta| >= m)
  double rhs = 0;
  std::vector<double> hit_given_size;  // Pr(hit | X_i), i = 0..n
  bool monotone = false;
  bool inequality = false;

  [[nodiscard]] bool passed() const { return monotone && inequality; }
};

/// Hit probability under a uniform i-subset, for every i, by enumerating all
/// C(n, i) subsets.
template <std::size_t W>
std::vector<double> hit_probability_by_size(const SetFamily<W>& family) {
  const std::size_t n = family.ground_size();
  if (n > kAppendixMaxGround)
    throw CapacityExceeded("m-subset enumeration needs |X| <= " + std::to_string(kAppendixMaxGround));
  std::vector<double> out(n + 1, 0.0);
  for (std::size_t i = 0; i <= n; ++i) {
    std::uint64_t hits = 0, total = 0;
    const std::uint64_t limit = std::uint64_t{1} << n;
    // Gosper's hack over masks with exactly i bits
    for (std::uint64_t mask = (std::uint64_t{1} << i) - 1; mask < limit;) {
      BitSet<W> sample;
      sample.set_word(0, mask);
      ++total;
      if (family.hit(sample)) ++hits;
      if (mask == 0) break;
      const std::uint64_t c = mask & (0 - mask);
      const std::uint64_t r = mask + c;
      mask = (((r ^ mask) >> 2) / c) | r;
    }
    out[i] = static_cast<double>(hits) / static_cast<double>(total);
  }
  return out;
}

template <std::size_t W>
AppendixReport verify_appendix_decomposition(const SetFamily<W>& family, double delta) {
  const std::size_t n = family.ground_size();
  if (n > kAppendixMaxGround)
    throw CapacityExceeded("appendix check needs |X| <= " + std::to_string(kAppendixMaxGround));
  AppendixReport rep;
  rep.ground_size = n;
  rep.params = make_appendix_params(n, delta);
  rep.lhs = hit_probability_enumeration(family, delta);
  rep.hit_given_size = hit_probability_by_size(family);
  rep.hit_given_m = rep.hit_given_size[rep.params.m];
  rep.size_at_least_m = binomial_range(n, delta, rep.params.m, n);
  rep.rhs = rep.hit_given_m * rep.size_at_least_m;
  rep.monotone = std::is_sorted(rep.hit_given_size.begin(), rep.hit_given_size.end());
  rep.inequality = rep.lhs >= rep.rhs - kExactComparisonSlack;
  return rep;
}

// ---------------------------------------------------------------------------
// Binomial lower tail against e^{-n delta / 8}

struct ChernoffReport {
  std::size_t n = 0;
  double delta = 0;
  std::size_t m = 0;              // ceil(n delta / 2)
  double below_m = 0;             // Pr(|X_delta| < m)
  double tail = 0;                // Pr(|X_delta| <= n delta / 2)
  double bound = 0;               // e^{-n delta / 8}
  double r = 0;
  double r_bound = 0;             // e^{-r delta / 8}
  std::optional<double> eps;
  bool tail_ok = false;           // tail <= bound
  bool below_m_ok = false;        // below_m <= tail
  bool r_monotone_ok = true;      // bound <= r_bound, checked when r <= n
  bool eps_ok = true;             // r_bound <= eps^2, checked when r >= 16 delta^{-1} ln(1/eps)
  bool eps_applicable = false;

  [[nodiscard]] bool passed() const { return tail_ok && below_m_ok && r_monotone_ok && eps_ok; }
};

inline ChernoffReport verify_chernoff_tail(std::size_t n, double delta, double r,
                                           std::optional<double> eps = std::nullopt) {
  require(n >= 1, "n must be positive");
  require(delta > 0.0 && delta <= 0.5, "delta must lie in (0, 1/2]");
  require(r > 0.0, "r must be positive");
  if (eps) require(*eps > 0.0 && *eps <= 0.5, "eps must lie in (0, 1/2]");
  ChernoffReport rep;
  rep.n = n;
  rep.delta = delta;
  rep.r = r;
  rep.eps = eps;
  const double half_mean = static_cast<double>(n) * delta / 2;
  rep.m = detail::ceil_tol(half_mean);
  rep.tail = binomial_range(n, delta, 0, detail::floor_tol(half_mean));
  rep.below_m = rep.m == 0 ? 0.0 : binomial_range(n, delta, 0, rep.m - 1);
  rep.bound = std::exp(-static_cast<double>(n) * delta / 8);
  rep.r_bound = std::exp(-r * delta / 8);
  rep.tail_ok = rep.tail <= rep.bound;
  rep.below_m_ok = rep.below_m <= rep.tail;
  if (r <= static_cast<double>(n)) rep.r_monotone_ok = rep.bound <= rep.r_bound;
  if (eps) {
    rep.eps_applicable = r >= 16.0 / delta * std::log(1.0 / *eps);
    if (rep.eps_applicable) rep.eps_ok = rep.r_bound <= *eps * *eps * (1 + kExactComparisonSlack);
  }
  return rep;
}

}  // namespace sunflower

#endif  // SUNFLOWER_PROBABILITY_HPP
