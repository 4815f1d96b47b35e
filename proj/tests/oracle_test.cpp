// Copyright 2026 The gramcov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gramcov/oracle.hpp"

#include <set>

#include <gtest/gtest.h>

#include "gramcov/counting.hpp"
#include "test_util.hpp"

namespace gramcov {
namespace {

using testing::bundled;

TEST(Oracle, BinaryTrees) {
  const Grammar g = bundled("binary.g");
  EXPECT_EQ(oracle::enumerate_trees(g, 0, 2).size(), 2u);
  EXPECT_EQ(oracle::enumerate_trees(g, 0, 3).size(), 0u);
  const auto five = oracle::enumerate_trees(g, 0, 5);
  EXPECT_EQ(five.size(), 4u);
  std::set<std::string> yields;
  for (const auto& t : five) yields.insert(yield_string(g, t));
  EXPECT_EQ(yields, (std::set<std::string>{"aa", "ab", "ba", "bb"}));
}

TEST(Oracle, JsonObjectSmallSizes) {
  const Grammar g = bundled("json.g");
  const SymbolId object = g.nonterminal_id("Object");
  EXPECT_TRUE(oracle::enumerate_trees(g, object, 2).empty());
  const auto three = oracle::enumerate_trees(g, object, 3);
  ASSERT_EQ(three.size(), 1u);
  EXPECT_EQ(yield_string(g, three[0]), "{}");
}

TEST(Oracle, EpsilonTree) {
  const Grammar g = bundled("example1.g");
  const auto trees = oracle::enumerate_trees(g, g.nonterminal_id("T"), 1);
  ASSERT_EQ(trees.size(), 1u);
  EXPECT_EQ(yield_string(g, trees[0]), "");
  EXPECT_TRUE(oracle::enumerate_trees(g, g.nonterminal_id("T"), 2).empty());
}

TEST(Oracle, CapIsEnforced) {
  const Grammar g = bundled("binary.g");
  EXPECT_THROW(oracle::enumerate_trees(g, 0, 15), oracle::CapExceeded);
  EXPECT_THROW(oracle::oracle_counts(g, 15), oracle::CapExceeded);
  EXPECT_NO_THROW(oracle::enumerate_trees(g, 0, 15, 15));
}

TEST(Oracle, TreesAreValidDistinctAndSized) {
  for (const char* name : {"binary.g", "example1.g", "example2.g", "json.g"}) {
    const Grammar g = bundled(name);
    for (std::size_t k = 1; k <= 12; ++k) {
      std::set<std::string> seen;
      for (const auto& t : oracle::enumerate_trees(g, g.start(), k)) {
        ASSERT_EQ(check_tree(g, t, g.start()), std::nullopt);
        ASSERT_EQ(tree_size(t), k);
        ASSERT_TRUE(seen.insert(canonical_form(t)).second);
      }
    }
  }
}

TEST(Oracle, StartCoverageIsTotal) {
  for (const char* name : {"example1.g", "example2.g", "json.g"}) {
    const Grammar g = bundled(name);
    const auto c = oracle::oracle_counts(g, 12);
    for (std::size_t k = 1; k <= 12; ++k) {
      EXPECT_EQ(c.single[g.start()][k], c.all[k]);
      EXPECT_EQ(c.pair[g.start()][g.start()][k], c.all[k]);
    }
  }
}

TEST(Oracle, AgreesWithCountTable) {
  for (const char* name : {"binary.g", "example1.g", "example2.g", "json.g"}) {
    const Grammar g = bundled(name);
    const auto c = oracle::oracle_counts(g, 12);
    const CountTable t(g, 12);
    for (std::size_t k = 1; k <= 12; ++k) {
      EXPECT_EQ(c.all[k], t.count(g.start(), k)) << name << " k=" << k;
    }
  }
}

}  // namespace
}  // namespace gramcov
