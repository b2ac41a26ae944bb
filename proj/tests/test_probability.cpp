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

#include <cmath>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sunflower/constructions.hpp"
#include "sunflower/probability.hpp"

using namespace sunflower;
using S = BitSet<1>;
using F = SetFamily<1>;

namespace {
F bp(std::size_t k, std::size_t r) { return block_product_family<1>(k, r).first; }
}  // namespace

TEST(Samplers, BernoulliContract) {
  EXPECT_THROW(BernoulliSubsetParams(0.0, 1), InvalidArgument);
  EXPECT_THROW(BernoulliSubsetParams(1.0, 1), InvalidArgument);
  const BernoulliSubsetParams near_one(1.0 - std::ldexp(1.0, -30), 3);
  for (std::uint64_t t = 0; t < 100; ++t)
    EXPECT_EQ(sample_bernoulli_subset<1>(GroundSet(10), near_one, t).count(), 10u);
  const BernoulliSubsetParams p(0.5, 42);
  EXPECT_EQ(sample_bernoulli_subset<1>(GroundSet(40), p, 0), sample_bernoulli_subset<1>(GroundSet(40), p, 0));
  EXPECT_NE(sample_bernoulli_subset<1>(GroundSet(40), p, 0), sample_bernoulli_subset<1>(GroundSet(40), p, 1));
}

TEST(Samplers, UniformMSubset) {
  for (std::uint64_t t = 0; t < 50; ++t) {
    EXPECT_TRUE(sample_uniform_m_subset<1>(GroundSet(7), 0, 1, t).empty());
    EXPECT_EQ(sample_uniform_m_subset<1>(GroundSet(7), 7, 1, t), S::prefix(7));
    EXPECT_EQ(sample_uniform_m_subset<4>(GroundSet(100), 37, 1, t).count(), 37u);
  }
  EXPECT_THROW(sample_uniform_m_subset<1>(GroundSet(4), 5, 1, 0), InvalidArgument);
}

TEST(Samplers, UniformPairsAreEquallyLikely) {
  const int trials = 100000;
  std::map<std::uint64_t, int> hist;
  for (int t = 0; t < trials; ++t) ++hist[sample_uniform_m_subset<1>(GroundSet(4), 2, 9, t).word(0)];
  ASSERT_EQ(hist.size(), 6u);
  const double e = trials / 6.0, sd = std::sqrt(trials * (1.0 / 6) * (5.0 / 6));
  for (const auto& [mask, c] : hist) EXPECT_NEAR(c, e, 3 * sd) << mask;
}

TEST(ExactHit, Examples) {
  auto f = bp(2, 2);
  EXPECT_DOUBLE_EQ(exact_hit_probability(f, 0.5, ExactPath::Enumeration).p_hat, 0.5625);
  EXPECT_DOUBLE_EQ(exact_hit_probability(f, 0.5, ExactPath::InclusionExclusion).p_hat, 0.5625);
  F one(GroundSet(6), 3, {{1, 3, 5}});
  EXPECT_NEAR(exact_hit_probability(one, 0.3).p_hat, 0.027, 1e-15);
  F none(GroundSet(5), 2, {});
  EXPECT_EQ(exact_hit_probability(none, 0.4, ExactPath::Enumeration).p_hat, 0.0);
  EXPECT_EQ(exact_hit_probability(none, 0.4, ExactPath::InclusionExclusion).p_hat, 0.0);
}

TEST(ExactHit, BothPathsMatchOracle) {
  std::mt19937_64 gen(31);
  for (int it = 0; it < 200; ++it) {
    const std::size_t n = 3 + gen() % 10, k = 1 + gen() % 3;
    auto f = oracle::random_family<1>(gen, n, k, 14);
    for (double d : {0.2, 0.5, 0.75}) {
      const double want = oracle::hit_probability(oracle::masks(f), n, d);
      EXPECT_NEAR(exact_hit_probability(f, d, ExactPath::Enumeration).p_hat, want, 1e-12);
      EXPECT_NEAR(exact_hit_probability(f, d, ExactPath::InclusionExclusion).p_hat, want, 1e-12);
    }
  }
}

TEST(ExactHit, CapacityLimits) {
  auto big = block_product_family<1>(5, 5).first;  // |X| = 25, 3125 sets
  EXPECT_THROW(exact_hit_probability(big, 0.5), CapacityExceeded);
}

TEST(MonteCarlo, CoversExactAndIsThreadInvariant) {
  auto f = bp(2, 2);
  auto a = mc_hit_probability(f, 0.5, 100000, 7, {1, true});
  auto b = mc_hit_probability(f, 0.5, 100000, 7, {3, true});
  EXPECT_EQ(a.hits, b.hits);
  EXPECT_NEAR(a.p_hat, 0.5625, a.half_width_3sigma);
  EXPECT_NEAR(a.half_width_3sigma, 3 * std::sqrt(0.5625 * 0.4375 / 1e5), 1e-4);
  ASSERT_TRUE(a.clopper_pearson);
  EXPECT_LT(a.clopper_pearson->first, 0.5625);
  EXPECT_GT(a.clopper_pearson->second, 0.5625);

  BlockProductView<1> view(2, 2);
  EXPECT_EQ(mc_hit_probability(view, 0.5, 20000, 7).hits, mc_hit_probability(f, 0.5, 20000, 7).hits);
}

TEST(MonteCarlo, TinyProbabilityIsZero) {
  F one(GroundSet(12), 12, {S::prefix(12)});
  EXPECT_EQ(mc_hit_probability(one, 0.01, 5000, 1).p_hat, 0.0);
}

TEST(Partition, ExactMeansFromEnumeration) {
  // mean over all t^n assignments, computed by the enumeration oracle
  F two(GroundSet(2), 1, {{0}, {1}});
  EXPECT_DOUBLE_EQ(oracle::partition_mean(oracle::masks(two), 2, 2), 1.5);
  for (std::size_t k = 1; k <= 3; ++k) {
    F one(GroundSet(k), k, {S::prefix(k)});
    EXPECT_NEAR(oracle::partition_mean(oracle::masks(one), k, 3), 3 * std::pow(1.0 / 3, k), 1e-15);
  }
  // the identity E[#hit] = t * Pr(hit at 1/t) on the same small cases
  std::mt19937_64 gen(32);
  for (int it = 0; it < 40; ++it) {
    const std::size_t n = 3 + gen() % 5, t = 2 + gen() % 3;
    auto f = oracle::random_family<1>(gen, n, 1 + gen() % 2, 6);
    EXPECT_NEAR(oracle::partition_mean(oracle::masks(f), n, t),
                t * exact_hit_probability(f, 1.0 / t).p_hat, 1e-12);
  }
}

TEST(Partition, ExperimentMatchesIdentity) {
  auto f = bp(2, 4);
  auto st = partition_experiment(f, 4, 100000, 3);
  EXPECT_NEAR(st.mean_hit_classes, 4 * exact_hit_probability(f, 0.25).p_hat, 3 * st.sigma_of_mean());
  EXPECT_GE(st.frac_trials_with_at_least.at(1), st.frac_trials_with_at_least.at(2));

  F one(GroundSet(3), 3, {{0, 1, 2}});
  auto s1 = partition_experiment(one, 2, 100000, 4);
  EXPECT_NEAR(s1.mean_hit_classes, 0.25, 3 * s1.sigma_of_mean());

  auto threads = partition_experiment(f, 4, 5000, 3, 4);
  auto serial = partition_experiment(f, 4, 5000, 3, 1);
  EXPECT_EQ(threads.mean_hit_classes, serial.mean_hit_classes);
  EXPECT_EQ(threads.frac_trials_with_at_least, serial.frac_trials_with_at_least);
}

TEST(PartitionIdentity, BlockProductExample) {
  auto rep = lemma2_identity_check(bp(2, 2), 4, 100000, 5);
  EXPECT_NEAR(rep.expected_mean, 49.0 / 64, 1e-15);
  EXPECT_TRUE(rep.passed);
  F one(GroundSet(3), 3, {{0, 1, 2}});
  EXPECT_NEAR(lemma2_identity_check(one, 2, 1000, 5).expected_mean, 0.25, 1e-15);
}

TEST(Coupling, BlockProductTwoByTwo) {
  auto rep = verify_appendix_decomposition(bp(2, 2), 0.5);
  EXPECT_EQ(rep.params.m, 1u);  // ceil(gamma * |X|) with gamma = 1/4
  EXPECT_DOUBLE_EQ(rep.lhs, 0.5625);
  EXPECT_NEAR(rep.hit_given_size[2], 4.0 / 6, 1e-15);
  EXPECT_NEAR(binomial_range(4, 0.5, 2, 4), 11.0 / 16, 1e-15);
  EXPECT_NEAR(rep.hit_given_size[2] * binomial_range(4, 0.5, 2, 4), 44.0 / 96, 1e-15);
  EXPECT_TRUE(rep.passed());
  for (std::size_t i = 0; i <= 4; ++i)
    EXPECT_NEAR(rep.hit_given_size[i], oracle::hit_given_m(oracle::masks(bp(2, 2)), 4, i), 1e-15);
}

TEST(Coupling, Boundaries) {
  F none(GroundSet(4), 2, {});
  auto a = verify_appendix_decomposition(none, 0.5);
  EXPECT_EQ(a.lhs, 0.0);
  EXPECT_TRUE(a.passed());
  F full(GroundSet(5), 5, {S::prefix(5)});
  auto b = verify_appendix_decomposition(full, 0.5);
  EXPECT_NEAR(b.lhs, std::pow(0.5, 5), 1e-15);
  EXPECT_TRUE(b.passed());
}

TEST(Coupling, RandomFamiliesPass) {
  std::mt19937_64 gen(33);
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = 3 + gen() % 10;
    auto f = oracle::random_family<1>(gen, n, 1 + gen() % 3, 10);
    for (double d : {0.125, 0.25, 0.5}) EXPECT_TRUE(verify_appendix_decomposition(f, d).passed());
  }
}

TEST(Chernoff, Examples) {
  auto a = verify_chernoff_tail(16, 0.5, 16);
  EXPECT_NEAR(a.tail, 2517.0 / 65536, 1e-15);
  EXPECT_NEAR(a.bound, std::exp(-1.0), 1e-15);
  EXPECT_TRUE(a.passed());
  auto b = verify_chernoff_tail(1, 0.5, 1);
  EXPECT_DOUBLE_EQ(b.tail, 0.5);
  EXPECT_NEAR(b.bound, 0.9394, 1e-4);
  EXPECT_TRUE(b.passed());
  EXPECT_TRUE(verify_chernoff_tail(10, 1e-6, 10).passed());
  EXPECT_THROW(verify_chernoff_tail(10, 0.6, 10), InvalidArgument);
}

TEST(Chernoff, TailMatchesLgammaOracle) {
  for (std::size_t n = 1; n <= 64; ++n)
    for (double d : {0.125, 0.25, 0.5}) {
      auto rep = verify_chernoff_tail(n, d, static_cast<double>(n));
      const auto cutoff = static_cast<std::size_t>(std::floor(n * d / 2 + 1e-12));
      EXPECT_NEAR(rep.tail, oracle::binomial_range(n, d, 0, cutoff), 1e-12);
      EXPECT_TRUE(rep.passed()) << n << " " << d;
    }
}

TEST(Chernoff, EpsilonStep) {
  const double d = 0.25, eps = 0.25;
  const double r = std::ceil(16 / d * std::log(1 / eps));
  auto rep = verify_chernoff_tail(64, d, r, eps);
  EXPECT_TRUE(rep.eps_applicable);
  EXPECT_TRUE(rep.eps_ok);
  EXPECT_FALSE(verify_chernoff_tail(64, d, 10, eps).eps_applicable);
}
