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

#include "gramcov/optimizer.hpp"

#include <gtest/gtest.h>

#include "gramcov/cover.hpp"
#include "gramcov/oracle.hpp"
#include "test_util.hpp"

namespace gramcov {
namespace {

using testing::bundled;

std::size_t index_of(const RatioMatrix& m, SymbolId x) {
  for (std::size_t i = 0; i < m.criterion.size(); ++i) {
    if (m.criterion[i] == x) return i;
  }
  ADD_FAILURE() << "symbol not in criterion";
  return 0;
}

TEST(RatioMatrix, JsonAtTwenty) {
  const Grammar g = bundled("json.g");
  const RatioMatrix m = build_ratio_matrix(g, 20);
  EXPECT_EQ(m.total, 12);
  EXPECT_EQ(m.criterion.size(), 6u);
  EXPECT_TRUE(m.excluded.empty());
  const auto at = [&](const char* f, const char* e) {
    return m.ratio[index_of(m, g.nonterminal_id(f))]
                  [index_of(m, g.nonterminal_id(e))];
  };
  EXPECT_EQ(at("Elements", "Object"), Rational(8, 12));
  EXPECT_EQ(at("Array", "Object"), Rational(11, 12));
  EXPECT_EQ(at("Array", "Array"), 1);
  EXPECT_EQ(at("Elements", "Array"), Rational(8, 11));
  EXPECT_EQ(at("Array", "Elements"), 1);
  EXPECT_EQ(at("Object", "Elements"), 1);
  for (std::size_t e = 0; e < m.criterion.size(); ++e) {
    EXPECT_EQ(m.ratio[e][e], 1);
  }
}

TEST(RatioMatrix, MatchesOracleOnExampleTwo) {
  const Grammar g = bundled("example2.g");
  const std::size_t n = 12;
  const auto truth = oracle::oracle_counts(g, n);
  const RatioMatrix m = build_ratio_matrix(g, n);
  EXPECT_EQ(m.total, truth.all[n]);
  for (std::size_t e = 0; e < m.criterion.size(); ++e) {
    const SymbolId ex = m.criterion[e];
    EXPECT_EQ(m.single_counts[e], truth.single[ex][n]);
    for (std::size_t f = 0; f < m.criterion.size(); ++f) {
      const SymbolId fx = m.criterion[f];
      EXPECT_EQ(m.ratio[f][e],
                Rational(truth.pair[ex][fx][n]) / Rational(truth.single[ex][n]));
    }
  }
}

TEST(RatioMatrix, ExcludesSymbolsWithoutCoveringTree) {
  // U only occurs in trees of size 4 or more.
  const Grammar g = parse_grammar(R"(S -> "a" | "b" U | S S ; U -> "u" ;)");
  const RatioMatrix m = build_ratio_matrix(g, 2);
  ASSERT_EQ(m.excluded.size(), 1u);
  EXPECT_EQ(m.excluded[0].nonterminal, g.nonterminal_id("U"));
  ASSERT_TRUE(m.excluded[0].first_coverable_size.has_value());
  EXPECT_EQ(*m.excluded[0].first_coverable_size, 4u);
  EXPECT_FALSE(m.excluded[0].warning.empty());
  ASSERT_EQ(m.criterion.size(), 1u);
}

TEST(RatioMatrix, EmptyLanguageThrows) {
  EXPECT_THROW(build_ratio_matrix(bundled("binary.g"), 3), EmptyLanguageAtSize);
}

TEST(RatioMatrix, ParallelEqualsSerial) {
  for (const char* name : {"example2.g", "json.g"}) {
    const Grammar g = bundled(name);
    const RatioMatrix a = build_ratio_matrix(g, 25, Execution::kSerial);
    const RatioMatrix b = build_ratio_matrix(g, 25, Execution::kParallel);
    EXPECT_EQ(a.criterion, b.criterion);
    EXPECT_EQ(a.single_counts, b.single_counts);
    EXPECT_EQ(a.pair_counts, b.pair_counts);
    EXPECT_EQ(a.ratio, b.ratio);
  }
}

TEST(SolveMaxmin, Trivial) {
  const auto s = solve_maxmin({{Rational(1)}});
  EXPECT_EQ(s.status, SolveStatus::kOptimal);
  EXPECT_EQ(s.p, 1);
  ASSERT_EQ(s.pi.size(), 1u);
  EXPECT_EQ(s.pi[0], 1);
}

TEST(SolveMaxmin, EmptyCriterion) {
  const auto s = solve_maxmin({});
  EXPECT_EQ(s.status, SolveStatus::kEmptyCriterion);
  EXPECT_TRUE(s.pi.empty());
}

TEST(SolveMaxmin, SymmetricTwoByTwo) {
  const Rational h(1, 2);
  const auto s = solve_maxmin({{Rational(1), h}, {h, Rational(1)}});
  EXPECT_EQ(s.p, Rational(3, 4));
  EXPECT_EQ(s.certificate, Rational(3, 4));
  EXPECT_EQ(s.pi[0], h);
  EXPECT_EQ(s.pi[1], h);
}

TEST(SolveMaxmin, DominatedColumnGetsNoMass) {
  // Column 1 covers both rows surely; column 0 only itself.
  const auto s = solve_maxmin({{Rational(1), Rational(1)},
                               {Rational(0), Rational(1)}});
  EXPECT_EQ(s.p, 1);
  EXPECT_EQ(s.pi[0], 0);
  EXPECT_EQ(s.pi[1], 1);
}

TEST(SolveMaxmin, JsonReachesOne) {
  const RatioMatrix m = build_ratio_matrix(bundled("json.g"), 20);
  const auto s = solve_maxmin(m.ratio);
  EXPECT_EQ(s.status, SolveStatus::kOptimal);
  EXPECT_EQ(s.p, 1);
  EXPECT_EQ(s.certificate, 1);
  EXPECT_EQ(min_row_value(m.ratio, s.pi), 1);
}

void expect_optimal_properties(const std::vector<std::vector<Rational>>& r) {
  const auto s = solve_maxmin(r);
  ASSERT_EQ(s.status, SolveStatus::kOptimal);
  Rational sum = 0;
  for (const auto& v : s.pi) {
    ASSERT_GE(v, 0);
    sum += v;
  }
  ASSERT_EQ(sum, 1);
  ASSERT_EQ(s.certificate, s.p);
  ASSERT_EQ(min_row_value(r, s.pi), s.p);
  // No worse than the uniform mixture or any pure strategy.
  const std::size_t m = r.size();
  ASSERT_GE(s.p, min_row_value(r, std::vector<Rational>(m, Rational(1, m))));
  for (std::size_t e = 0; e < m; ++e) {
    std::vector<Rational> pure(m, Rational(0));
    pure[e] = 1;
    ASSERT_GE(s.p, min_row_value(r, pure));
  }
}

TEST(SolveMaxmin, PropertiesOnGrammarMatrices) {
  for (const char* name : {"binary.g", "example1.g", "example2.g", "json.g"}) {
    const Grammar g = bundled(name);
    CountTable t(g, 40);
    for (std::size_t n = 1; n <= 40; ++n) {
      if (t.count(g.start(), n).is_zero()) continue;
      SCOPED_TRACE(std::string(name) + " n=" + std::to_string(n));
      expect_optimal_properties(build_ratio_matrix(g, n).ratio);
    }
  }
}

TEST(SolveMaxmin, PropertiesOnRandomMatrices) {
  RandomSource rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + rng.uniform_below(std::uint64_t{6});
    std::vector<std::vector<Rational>> r(m, std::vector<Rational>(m));
    for (std::size_t f = 0; f < m; ++f) {
      for (std::size_t e = 0; e < m; ++e) {
        r[f][e] = f == e ? Rational(1)
                         : Rational(static_cast<long>(rng.uniform_below(
                                        std::uint64_t{5})),
                                    4);
      }
    }
    expect_optimal_properties(r);
  }
}

TEST(SolveMaxmin, InvariantUnderCountScaling) {
  const Grammar g = bundled("example2.g");
  const RatioMatrix m = build_ratio_matrix(g, 15);
  const BigInt c = 7;
  std::vector<BigInt> singles = m.single_counts;
  for (auto& v : singles) v *= c;
  auto pairs = m.pair_counts;
  for (auto& row : pairs) {
    for (auto& v : row) v *= c;
  }
  const RatioMatrix scaled =
      ratio_matrix_from_counts(m.criterion, singles, pairs);
  EXPECT_EQ(scaled.ratio, m.ratio);
  EXPECT_EQ(solve_maxmin(scaled.ratio).p, solve_maxmin(m.ratio).p);
}

TEST(SolveMaxmin, FloatAgreesWithExact) {
  for (const char* name : {"example2.g", "json.g"}) {
    const Grammar g = bundled(name);
    const CountTable t(g, 40);
    for (std::size_t n = 1; n <= 40; ++n) {
      if (t.count(g.start(), n).is_zero()) continue;
      const RatioMatrix m = build_ratio_matrix(g, n);
      const auto exact = solve_maxmin(m.ratio);
      const auto approx = solve_maxmin_float(m.ratio);
      EXPECT_NEAR(approx.p, to_double(exact.p), 1e-9);
      EXPECT_NEAR(approx.certificate, approx.p, 1e-9);
      double sum = 0;
      for (double v : approx.pi) {
        EXPECT_GE(v, -1e-12);
        sum += v;
      }
      EXPECT_NEAR(sum, 1.0, 1e-9);
    }
  }
}

TEST(IsotropicBound, Values) {
  EXPECT_EQ(isotropic_coverage_bound(Rational(1), 1), 1);
  EXPECT_EQ(isotropic_coverage_bound(Rational(0), 50), 0);
  EXPECT_EQ(isotropic_coverage_bound(Rational(8, 12), 2), Rational(8, 9));
  EXPECT_EQ(isotropic_coverage_bound(Rational(1, 2), 3), Rational(7, 8));
  EXPECT_EQ(isotropic_coverage_bound(Rational(1, 3), 0), 0);
}

}  // namespace
}  // namespace gramcov
