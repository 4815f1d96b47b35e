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

#include "gramcov/cover.hpp"

#include <map>
#include <set>

#include <gtest/gtest.h>

#include "gramcov/oracle.hpp"
#include "gramcov/sampler.hpp"
#include "test_util.hpp"

namespace gramcov {
namespace {

using testing::bundled;
using testing::find_rule;

std::string show(const Grammar& g, const TaggedWord& w) {
  std::string out;
  for (const TaggedSymbol& ts : w) {
    out += g.name(ts.symbol);
    if (ts.symbol.is_nonterminal()) {
      out += "," + std::to_string(static_cast<int>(ts.tag));
    }
    out += ' ';
  }
  return out;
}

TEST(Lift, ZeroAndTwo) {
  const Grammar g = bundled("example1.g");
  const Symbol a = Symbol::terminal(*g.find_terminal("a"));
  const Symbol b = Symbol::terminal(*g.find_terminal("b"));
  const Symbol s = Symbol::nonterminal(g.nonterminal_id("S"));
  const Symbol t = Symbol::nonterminal(g.nonterminal_id("T"));
  const std::vector<Symbol> w{a, s, b, b, t};
  EXPECT_EQ(show(g, lift_zero(w)), "a S,0 b b T,0 ");
  EXPECT_EQ(show(g, lift_two(w)), "a S,2 b b T,2 ");
  EXPECT_TRUE(lift_zero(std::vector<Symbol>{}).empty());
  const std::vector<Symbol> ab{a, b};
  EXPECT_EQ(show(g, lift_zero(ab)), "a b ");
}

TEST(ExpandOneTwo, AtLeastOneBelow) {
  const Grammar g = bundled("example1.g");
  const Symbol a = Symbol::terminal(*g.find_terminal("a"));
  const Symbol b = Symbol::terminal(*g.find_terminal("b"));
  const Symbol s = Symbol::nonterminal(g.nonterminal_id("S"));
  const Symbol t = Symbol::nonterminal(g.nonterminal_id("T"));
  const auto out = expand_one_two(std::vector<Symbol>{a, s, b, t});
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(show(g, out[0]), "a S,1 b T,1 ");
  EXPECT_EQ(show(g, out[1]), "a S,2 b T,1 ");
  EXPECT_EQ(show(g, out[2]), "a S,1 b T,2 ");
  EXPECT_TRUE(expand_one_two(std::vector<Symbol>{a, b}).empty());
  const auto single = expand_one_two(std::vector<Symbol>{s});
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(show(g, single[0]), "S,1 ");
}

TEST(BuildGX, ExampleTwoRuleSet) {
  const Grammar g = bundled("example2.g");
  const CoverGrammar c = build_gx(g, g.nonterminal_id("X"));
  const Grammar& d = c.derived();
  EXPECT_EQ(d.nonterminals()[d.start()], "(S,1)");
  std::multiset<std::string> got;
  for (const Rule& r : d.rules()) got.insert(format_rule(d, r));
  const std::multiset<std::string> expected{
      // kAbove family
      R"((S,0) -> (S,0) (S,0))", R"((S,0) -> "a" (T,0))",
      R"((S,0) -> (X,0) "b")", R"((T,0) -> "a" "a")", R"((X,0) -> "b")",
      R"((X,0) -> (T,0) (X,0))",
      // kBelow expansions for S (T has no non-terminal, X is the target)
      R"((S,1) -> (S,1) (S,1))", R"((S,1) -> (S,1) (S,2))",
      R"((S,1) -> (S,2) (S,1))", R"((S,1) -> "a" (T,1))",
      R"((S,1) -> (X,1) "b")",
      // target rules
      R"((X,1) -> "b")", R"((X,1) -> (T,0) (X,0))",
      // kAbsent family
      R"((S,2) -> (S,2) (S,2))", R"((S,2) -> "a" (T,2))",
      R"((S,2) -> (X,2) "b")", R"((T,2) -> "a" "a")"};
  EXPECT_EQ(got.size(), 17u);
  EXPECT_EQ(got, expected);
  for (RuleId r = 0; r < d.rules().size(); ++r) {
    const Rule& dr = d.rule(r);
    const Rule& orig = g.rule(c.origin_rule(r));
    ASSERT_EQ(c.origin_nonterminal(dr.lhs), orig.lhs);
    ASSERT_EQ(dr.rhs.size(), orig.rhs.size());
    for (std::size_t i = 0; i < dr.rhs.size(); ++i) {
      if (dr.rhs[i].is_terminal()) {
        ASSERT_EQ(dr.rhs[i], orig.rhs[i]);
      } else {
        ASSERT_EQ(c.origin_nonterminal(dr.rhs[i].id), orig.rhs[i].id);
      }
    }
  }
}

TEST(BuildGX, FamilyOrder) {
  const Grammar g = bundled("example2.g");
  const CoverGrammar c = build_gx(g, g.nonterminal_id("X"));
  const Grammar& d = c.derived();
  const std::vector<std::string> head{
      R"((S,0) -> (S,0) (S,0))", R"((S,0) -> "a" (T,0))",
      R"((S,0) -> (X,0) "b")", R"((T,0) -> "a" "a")",
      R"((X,0) -> (T,0) (X,0))", R"((X,0) -> "b")",
      R"((S,1) -> (S,1) (S,1))", R"((S,1) -> (S,2) (S,1))",
      R"((S,1) -> (S,1) (S,2))"};
  for (std::size_t i = 0; i < head.size(); ++i) {
    EXPECT_EQ(format_rule(d, d.rule(static_cast<RuleId>(i))), head[i]);
  }
}

TEST(BuildGX, BinaryGrammarKeepsEveryTree) {
  const Grammar g = bundled("binary.g");
  const CoverGrammar c = build_gx(g, 0);
  const CountTable base(g, 40);
  const CountTable cov(c.derived(), 40);
  for (std::size_t n = 1; n <= 40; ++n) {
    ASSERT_EQ(cov.count(c.derived().start(), n), base.count(0, n));
  }
}

TEST(CoverageTables, JsonSingleAndPairCounts) {
  CoverageTables tables(bundled("json.g"));
  const Grammar& g = tables.grammar();
  const SymbolId elements = g.nonterminal_id("Elements");
  const SymbolId array = g.nonterminal_id("Array");
  EXPECT_EQ(tables.covering_count(elements, 20), 8);
  EXPECT_EQ(tables.pair_covering_count(array, elements, 20), 8);
  EXPECT_EQ(tables.pair_covering_count(elements, array, 20), 8);
  EXPECT_EQ(pair_covering_count(g, array, elements, 20), 8);
  EXPECT_EQ(coverage_probability(tables, elements, 20), Rational(8, 12));
  EXPECT_EQ(coverage_probability(tables, g.nonterminal_id("Object"), 20), 1);
  EXPECT_EQ(pair_coverage_probability(tables, elements, elements, 20),
            coverage_probability(tables, elements, 20));
}

TEST(CoverageTables, EmptyLanguageGivesZero) {
  CoverageTables tables(bundled("binary.g"));
  EXPECT_EQ(coverage_probability(tables, 0, 3), 0);
  EXPECT_EQ(coverage_probability(tables, 0, 5), 1);
}

// Single and pair covering counts equal brute-force counts of covering trees.
void expect_bijection_counts(const Grammar& g, std::size_t max_size) {
  const auto truth = oracle::oracle_counts(g, max_size);
  CoverageTables tables(g);
  for (std::size_t k = 1; k <= max_size; ++k) {
    ASSERT_EQ(tables.total(k), truth.all[k]);
    for (SymbolId x = 0; x < g.nonterminal_count(); ++x) {
      ASSERT_EQ(tables.covering_count(x, k), truth.single[x][k])
          << "x=" << g.nonterminals()[x] << " k=" << k;
      for (SymbolId y = 0; y < g.nonterminal_count(); ++y) {
        ASSERT_EQ(tables.pair_covering_count(x, y, k), truth.pair[x][y][k])
            << "x=" << g.nonterminals()[x] << " y=" << g.nonterminals()[y]
            << " k=" << k << "\n"
            << format_grammar(g);
      }
    }
  }
}

TEST(Bijection, CountsMatchOracleOnBundledGrammars) {
  for (const char* name : {"binary.g", "example1.g", "example2.g", "json.g"}) {
    SCOPED_TRACE(name);
    expect_bijection_counts(bundled(name), 12);
  }
}

TEST(Bijection, CountsMatchOracleOnRandomGrammars) {
  RandomSource rng(77);
  for (int i = 0; i < 30; ++i) {
    expect_bijection_counts(testing::random_grammar(rng), 8);
  }
}

TEST(Bijection, SetInclusionsAsCounts) {
  for (const char* name : {"example2.g", "json.g"}) {
    CoverageTables tables(bundled(name));
    const Grammar& g = tables.grammar();
    for (std::size_t n = 1; n <= 30; ++n) {
      const BigInt total = tables.total(n);
      if (!total.is_zero()) {
        EXPECT_EQ(coverage_probability(tables, g.start(), n), 1);
      }
      for (SymbolId x = 0; x < g.nonterminal_count(); ++x) {
        const BigInt cx = tables.covering_count(x, n);
        ASSERT_LE(cx, total);
        for (SymbolId y = 0; y < g.nonterminal_count(); ++y) {
          const BigInt cxy = tables.pair_covering_count(x, y, n);
          ASSERT_LE(cxy, cx);
          ASSERT_LE(cxy, tables.covering_count(y, n));
        }
      }
    }
  }
}

// Distinct trees of the covering grammar project to distinct origin trees.
TEST(Bijection, ProjectionIsInjective) {
  for (const char* name : {"example2.g", "json.g"}) {
    const Grammar g = bundled(name);
    for (SymbolId x = 0; x < g.nonterminal_count(); ++x) {
      const CoverGrammar c = build_gx(g, x);
      for (std::size_t n = 1; n <= 12; ++n) {
        const auto derived =
            oracle::enumerate_trees(c.derived(), c.derived().start(), n);
        std::set<std::string> images;
        for (const auto& t : derived) {
          const auto p = project(c, t);
          ASSERT_EQ(check_tree(g, p, g.start()), std::nullopt);
          ASSERT_TRUE(covers(p, x));
          images.insert(canonical_form(p));
        }
        ASSERT_EQ(images.size(), derived.size());
      }
    }
  }
}

TEST(Project, TaggedTreeOfSizeNineteen) {
  const Grammar g = bundled("example2.g");
  const CoverGrammar c = build_gx(g, g.nonterminal_id("X"));
  const Grammar& d = c.derived();
  auto leaf = [&](const std::string& lhs, std::vector<std::string> rhs) {
    return TreeBuilder::apply(d, find_rule(d, lhs, rhs), {});
  };
  auto one = [&](const std::string& lhs, std::vector<std::string> rhs,
                 const DerivationTree& kid) {
    return TreeBuilder::apply(d, find_rule(d, lhs, rhs), {&kid, 1});
  };
  auto two = [&](const std::string& lhs, std::vector<std::string> rhs,
                 const DerivationTree& l, const DerivationTree& r) {
    const std::vector<DerivationTree> kids{l, r};
    return TreeBuilder::apply(d, find_rule(d, lhs, rhs), kids);
  };
  const auto s2 = one("(S,2)", {"\"a\"", "(T,2)"},
                      leaf("(T,2)", {"\"a\"", "\"a\""}));
  const auto s1_left =
      one("(S,1)", {"(X,1)", "\"b\""}, leaf("(X,1)", {"\"b\""}));
  const auto left = two("(S,1)", {"(S,2)", "(S,1)"}, s2, s1_left);
  const auto x1 = two("(X,1)", {"(T,0)", "(X,0)"},
                      leaf("(T,0)", {"\"a\"", "\"a\""}),
                      leaf("(X,0)", {"\"b\""}));
  const auto right = one("(S,1)", {"(X,1)", "\"b\""}, x1);
  const auto tagged = two("(S,1)", {"(S,1)", "(S,1)"}, left, right);
  ASSERT_EQ(check_tree(d, tagged, d.start()), std::nullopt);
  EXPECT_EQ(tree_size(tagged), 19u);

  const auto origin = project(c, tagged);
  EXPECT_EQ(check_tree(g, origin, g.start()), std::nullopt);
  EXPECT_EQ(tree_size(origin), 19u);
  EXPECT_EQ(yield_string(g, origin), "aaabbaabb");
  EXPECT_EQ(render_tree(g, origin),
            R"(S(S(S("a" T("a" "a")) S(X("b") "b")) S(X(T("a" "a") X("b")) "b")))");
}

TEST(Project, BinarySizeTwo) {
  const Grammar g = bundled("binary.g");
  const CoverGrammar c = build_gx(g, 0);
  const CountTable t(c.derived(), 2);
  RandomSource rng(3);
  const auto p = project(c, sample_tree(c.derived(), t, c.derived().start(),
                                        2, rng));
  EXPECT_EQ(check_tree(g, p, 0), std::nullopt);
  EXPECT_EQ(tree_size(p), 2u);
}

TEST(SampleCoveringTree, JsonElementsUniformOverEight) {
  CoverageTables tables(bundled("json.g"));
  const Grammar& g = tables.grammar();
  const SymbolId elements = g.nonterminal_id("Elements");
  std::map<std::string, std::size_t> hist;
  RandomSource rng(12);
  const std::size_t draws = 8000;
  for (std::size_t i = 0; i < draws; ++i) {
    const auto t = sample_covering_tree(tables, elements, 20, rng);
    ASSERT_TRUE(covers(t, elements));
    // Covering Elements covers every other non-terminal.
    for (SymbolId x = 0; x < g.nonterminal_count(); ++x) {
      ASSERT_TRUE(covers(t, x));
    }
    ++hist[canonical_form(t)];
  }
  EXPECT_EQ(hist.size(), 8u);
  EXPECT_LT(testing::chi_square_uniform(hist, 8, draws), 24.32);
}

TEST(SampleCoveringTree, BinaryMatchesPlainSampling) {
  CoverageTables tables(bundled("binary.g"));
  std::map<std::string, std::size_t> hist;
  RandomSource rng(2);
  for (int i = 0; i < 4000; ++i) {
    ++hist[canonical_form(sample_covering_tree(tables, 0, 5, rng))];
  }
  EXPECT_EQ(hist.size(), 4u);
  EXPECT_LT(testing::chi_square_uniform(hist, 4, 4000), 16.27);
}

TEST(SampleCoveringTree, ExampleTwoSizeNineteenCoversX) {
  CoverageTables tables(bundled("example2.g"));
  const Grammar& g = tables.grammar();
  const SymbolId x = g.nonterminal_id("X");
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    RandomSource rng(seed);
    const auto t = sample_covering_tree(tables, x, 19, rng);
    ASSERT_TRUE(covers(t, x));
    ASSERT_EQ(tree_size(t), 19u);
    ASSERT_EQ(check_tree(g, t, g.start()), std::nullopt);
  }
}

TEST(SampleCoveringTree, PairSamplesCoverBoth) {
  CoverageTables tables(bundled("example2.g"));
  const Grammar& g = tables.grammar();
  const SymbolId x = g.nonterminal_id("X");
  const SymbolId t_sym = g.nonterminal_id("T");
  RandomSource rng(4);
  for (int i = 0; i < 300; ++i) {
    const auto t = sample_covering_tree(tables, x, t_sym, 17, rng);
    ASSERT_TRUE(covers(t, x));
    ASSERT_TRUE(covers(t, t_sym));
    ASSERT_EQ(tree_size(t), 17u);
  }
}

TEST(SampleCoveringTree, UnrealizableThrows) {
  CoverageTables tables(
      parse_grammar(R"(S -> "a" | "b" U ; U -> "u" ;)"));
  RandomSource rng(1);
  EXPECT_THROW(sample_covering_tree(tables, 1, 2, rng), SizeUnrealizable);
  EXPECT_NO_THROW(sample_covering_tree(tables, 1, 4, rng));
}

}  // namespace
}  // namespace gramcov
