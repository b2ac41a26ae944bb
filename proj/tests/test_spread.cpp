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

#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sunflower/constructions.hpp"
#include "sunflower/spread.hpp"

using namespace sunflower;
using S = BitSet<1>;
using F = SetFamily<1>;

namespace {
const F kStar(GroundSet(5), 2, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
}

TEST(SupersetCount, Examples) {
  F tri(GroundSet(4), 2, {{1, 2}, {1, 3}, {2, 3}});
  EXPECT_EQ(superset_count(tri, S{1}), 2u);
  auto bp = block_product_family<1>(2, 2).first;
  EXPECT_EQ(superset_count(bp, S{0}), 2u);
  for (const auto& s : bp) EXPECT_EQ(superset_count(bp, s), 1u);
  EXPECT_THROW(superset_count(bp, S{}), InvalidArgument);
}

TEST(SpreadWitness, Examples) {
  auto bp = block_product_family<1>(2, 2).first;
  EXPECT_TRUE(spread_witness(bp, 2.0).certified());

  auto rep = spread_witness(kStar, 3.0);
  ASSERT_FALSE(rep.certified());
  EXPECT_EQ(rep.violation->t, S{0});
  EXPECT_EQ(rep.violation->count, 4u);

  EXPECT_TRUE(spread_witness(kStar, 4.0).certified());
  EXPECT_THROW(spread_witness(kStar, 0.0), InvalidArgument);
}

TEST(SpreadWitness, MaxRatioPicksWorstViolation) {
  // {0} in 3 sets (ratio 3/2) comes first, {5} in 6 sets (ratio 3) is worst
  F f(GroundSet(12), 2, {{0, 1}, {0, 2}, {0, 3}, {5, 6}, {5, 7}, {5, 8}, {5, 9}, {5, 10}, {5, 11}});
  auto first = spread_witness(f, 2.0, ViolationChoice::First);
  auto worst = spread_witness(f, 2.0, ViolationChoice::MaxRatio);
  ASSERT_TRUE(first.violation && worst.violation);
  EXPECT_EQ(first.violation->t, S{0});
  EXPECT_EQ(first.violation->count, 3u);
  EXPECT_EQ(worst.violation->t, S{5});
  EXPECT_EQ(worst.violation->count, 6u);
}

TEST(Spreadness, Examples) {
  EXPECT_DOUBLE_EQ(spreadness(block_product_family<1>(2, 3).first), 3.0);
  EXPECT_DOUBLE_EQ(spreadness(kStar), 4.0);
  EXPECT_DOUBLE_EQ(spreadness(F(GroundSet(3), 2, {{0, 1}})), 1.0);
}

TEST(Spreadness, BlockProductIsExactlyR) {
  for (std::size_t k = 1; k <= 4; ++k)
    for (std::size_t r = 1; k * r <= 16; ++r)
      EXPECT_NEAR(spreadness(block_product_family<1>(k, r).first), static_cast<double>(r), 1e-9) << k << "," << r;
}

TEST(Spreadness, AgreesWithAllSubsetOracle) {
  std::mt19937_64 gen(21);
  for (int it = 0; it < 400; ++it) {
    const std::size_t n = 4 + gen() % 7, k = 2 + gen() % 3;
    if (k > n) continue;
    auto f = oracle::random_family<1>(gen, n, k, 25);
    EXPECT_NEAR(spreadness(f), oracle::spreadness(oracle::masks(f), n, k), 1e-12);
  }
}

// Certified at r iff spreadness <= r (k >= 2); r-spread is monotone in r.
TEST(Spreadness, CertificationThresholdProperty) {
  std::mt19937_64 gen(22);
  for (int it = 0; it < 300; ++it) {
    const std::size_t n = 5 + gen() % 6, k = 2 + gen() % 2;
    auto f = oracle::random_family<1>(gen, n, k, 20);
    const double s = spreadness(f);
    EXPECT_TRUE(spread_witness(f, s).certified());
    for (double r : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 6.0}) {
      const bool cert = spread_witness(f, r).certified();
      EXPECT_EQ(cert, s <= r) << r;
      EXPECT_EQ(cert, oracle::is_spread(oracle::masks(f), n, k, r)) << r;
      if (cert) {
        EXPECT_TRUE(spread_witness(f, r + 1).certified());
      }
    }
    EXPECT_TRUE(spread_witness(f, static_cast<double>(f.size())).certified());
  }
}

TEST(Spreadness, KOneIsFamilySize) {
  F f(GroundSet(5), 1, {{0}, {2}, {4}});
  EXPECT_DOUBLE_EQ(spreadness(f), 3.0);
  EXPECT_TRUE(spread_witness(f, 3.0).certified());
}
