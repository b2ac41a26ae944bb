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
#include "sunflower/family.hpp"
#include "sunflower/family_io.hpp"

using namespace sunflower;
using S = BitSet<1>;
using F = SetFamily<1>;

namespace {
F fam(std::size_t n, std::size_t k, std::vector<S> sets) { return F(GroundSet(n), k, std::move(sets)); }
}  // namespace

TEST(Intersect, Examples) {
  const GroundSet g(8);
  EXPECT_EQ(intersect(S{1, 2}, S{2, 3}, g), (S{2}));
  EXPECT_EQ(intersect(S{1, 2}, S{3, 4}, g), S{});
  EXPECT_EQ(intersect(S{1, 2}, S{1, 2}, g), (S{1, 2}));
  EXPECT_THROW(intersect(S{1, 9}, S{1}, g), InvalidArgument);
}

TEST(IsSunflower, Examples) {
  auto a = is_sunflower(std::vector<S>{{1, 2}, {3, 4}, {5, 6}});
  ASSERT_TRUE(a);
  EXPECT_TRUE(a->core.empty());
  EXPECT_EQ(a->petals.size(), 3u);

  auto b = is_sunflower(std::vector<S>{{1, 2}, {1, 3}, {1, 4}});
  ASSERT_TRUE(b);
  EXPECT_EQ(b->core, S{1});

  EXPECT_FALSE(is_sunflower(std::vector<S>{{1, 2}, {2, 3}, {1, 3}}));

  auto one = is_sunflower(std::vector<S>{{4, 5}});
  ASSERT_TRUE(one);
  EXPECT_EQ(one->core, (S{4, 5}));
  EXPECT_EQ(one->petals.size(), 1u);
}

TEST(IsSunflower, RejectsBadInput) {
  EXPECT_THROW(is_sunflower(std::vector<S>{}), InvalidArgument);
  EXPECT_THROW(is_sunflower(std::vector<S>{{1, 2}, {1, 2}}), InvalidArgument);
}

TEST(IsSunflower, PropertiesAgainstPairwiseDefinition) {
  std::mt19937_64 gen(11);
  for (int it = 0; it < 3000; ++it) {
    const std::size_t n = 3 + gen() % 8, k = 1 + gen() % 3, q = 2 + gen() % 3;
    if (k > n) continue;
    auto f = oracle::random_family<1>(gen, n, k, q);
    std::vector<S> sets(f.begin(), f.end());
    auto got = is_sunflower(sets);
    std::vector<oracle::Mask> ms = oracle::masks(f);
    EXPECT_EQ(got.has_value(), oracle::pairwise_sunflower(ms));
    if (got && sets.size() >= 2) {
      S all = sets[0];
      for (const auto& s : sets) all &= s;
      EXPECT_EQ(got->core, all);
    }
    if (sets.size() == 2) {
      EXPECT_TRUE(got.has_value());
    }
  }
}

TEST(Link, Examples) {
  auto f = fam(4, 2, {{1, 2}, {1, 3}, {2, 3}});
  auto l = link(f, S{1});
  EXPECT_EQ(l.k(), 1u);
  EXPECT_EQ(oracle::members(l), (std::vector<S>{{2}, {3}}));

  auto g = fam(6, 2, {{1, 2}, {3, 4}});
  EXPECT_TRUE(link(g, S{5}).empty());

  auto h = fam(5, 3, {{1, 2, 3}, {1, 2, 4}});
  EXPECT_EQ(oracle::members(link(h, S{1, 2})), (std::vector<S>{{3}, {4}}));

  EXPECT_THROW(link(f, S{}), InvalidArgument);
}

TEST(Link, SizeMatchesSupersetCount) {
  std::mt19937_64 gen(12);
  for (int it = 0; it < 500; ++it) {
    auto f = oracle::random_family<1>(gen, 10, 3, 20);
    S t;
    t.set(gen() % 10);
    if (gen() % 2) t.set(gen() % 10);
    auto l = link(f, t);
    EXPECT_EQ(l.size(), oracle::count_supersets(oracle::masks(f), t.word(0)));
    for (const auto& s : l) EXPECT_TRUE(f.contains(s | t));
  }
}

TEST(DisjointSubfamily, Examples) {
  auto a = disjoint_subfamily_bruteforce(fam(5, 2, {{1, 2}, {3, 4}, {1, 3}}), 2);
  ASSERT_TRUE(a);
  EXPECT_EQ(*a, (std::vector<S>{{1, 2}, {3, 4}}));
  EXPECT_FALSE(disjoint_subfamily_bruteforce(fam(5, 2, {{1, 2}, {1, 3}, {1, 4}}), 2));
  auto bp = fam(4, 2, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  auto c = disjoint_subfamily_bruteforce(bp, 2);
  ASSERT_TRUE(c);
  EXPECT_EQ(*c, (std::vector<S>{{0, 2}, {1, 3}}));
}

TEST(FindSunflower, AgreesWithOracle) {
  std::mt19937_64 gen(13);
  for (int it = 0; it < 2000; ++it) {
    const std::size_t n = 4 + gen() % 9, k = 1 + gen() % 3, p = 2 + gen() % 3;
    auto f = oracle::random_family<1>(gen, n, k, 12);
    auto got = find_sunflower(f, p);
    auto want = oracle::find_sunflower(oracle::masks(f), p);
    ASSERT_EQ(got.sunflower.has_value(), want.has_value());
    if (got.sunflower) {
      auto check = is_sunflower(got.sunflower->petals);
      ASSERT_TRUE(check);
      EXPECT_EQ(got.sunflower->petals.size(), p);
      EXPECT_EQ(check->core, got.sunflower->core);
      for (const auto& s : got.sunflower->petals) EXPECT_TRUE(f.contains(s));
    }
  }
}

TEST(FindSunflower, NodeCapReportsCapped) {
  std::vector<S> sets;
  for (unsigned i = 0; i < 12; ++i) sets.push_back(S{0, i + 1});
  auto capped = find_sunflower(fam(14, 2, sets), 6, 5);
  EXPECT_FALSE(capped.sunflower);
  EXPECT_TRUE(capped.capped);
  auto full = find_sunflower(fam(14, 2, sets), 6);
  ASSERT_TRUE(full.sunflower);
  EXPECT_EQ(full.sunflower->core, S{0});
}

TEST(SetFamily, ValidatesMembers) {
  EXPECT_THROW(fam(3, 2, {{0, 5}}), InvalidArgument);
  EXPECT_THROW(fam(4, 2, {{0, 1, 2}}), InvalidArgument);
  EXPECT_THROW(fam(4, 2, {{0, 1}, {0, 1}}), InvalidArgument);
  EXPECT_THROW(GroundSet(0), InvalidArgument);
  EXPECT_THROW(GroundSet(1025), InvalidArgument);
  auto d = F::deduplicated(GroundSet(4), 2, {{0, 1}, {0, 1}, {2, 3}});
  EXPECT_EQ(d.size(), 2u);
}

TEST(FamilyIo, ParsesValidDocument) {
  auto j = nlohmann::json::parse(R"({"schema_version":1,"ground_set_size":4,"k":2,"sets":[[0,2],[1,3]]})");
  auto f = to_family<1>(parse_family_document(j));
  EXPECT_EQ(f.size(), 2u);
  EXPECT_EQ(family_to_json(f)["sets"], j["sets"]);
}

TEST(FamilyIo, RejectsMalformedRows) {
  const char* bad[] = {
      R"({"k":2,"sets":[]})",
      R"({"ground_set_size":4,"k":2,"sets":[[0,4]]})",
      R"({"ground_set_size":4,"k":2,"sets":[[2,1]]})",
      R"({"ground_set_size":4,"k":2,"sets":[[1,1]]})",
      R"({"ground_set_size":4,"k":2,"sets":[[0,1,2]]})",
      R"({"ground_set_size":4,"k":2,"sets":[[0,1],[0,1]]})",
      R"({"ground_set_size":4,"k":2,"sets":[[0,"a"]]})",
      R"({"ground_set_size":4,"k":5,"sets":[]})",
      R"({"ground_set_size":0,"k":1,"sets":[]})",
      R"({"ground_set_size":2000,"k":1,"sets":[]})",
      R"({"schema_version":9,"ground_set_size":4,"k":2,"sets":[]})",
      R"({"ground_set_size":2,"k":1,"sets":[[0]],"element_names":["a"]})",
  };
  for (const char* doc : bad)
    EXPECT_THROW(parse_family_document(nlohmann::json::parse(doc)), FormatError) << doc;
}

TEST(FamilyIo, NamedReindexInFirstAppearanceOrder) {
  auto doc = index_named_family({{"x", "y"}, {"z", "x"}});
  EXPECT_EQ(doc.element_names, (std::vector<std::string>{"x", "y", "z"}));
  EXPECT_EQ(doc.sets, (std::vector<std::vector<unsigned>>{{0, 1}, {0, 2}}));
  EXPECT_EQ(doc.ground_set_size, 3u);
  EXPECT_THROW(index_named_family({{"a", "b"}, {"c"}}), FormatError);
  EXPECT_THROW(index_named_family({{"a", "a"}}), FormatError);
}
