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

#include <algorithm>
#include <cmath>
#include <utility>

namespace gramcov {

EmptyLanguageAtSize::EmptyLanguageAtSize(std::size_t size)
    : std::runtime_error("the grammar has no derivation tree of size " +
                         std::to_string(size)),
      size_(size) {}

RatioMatrix ratio_matrix_from_counts(
    std::vector<SymbolId> criterion, std::vector<BigInt> single_counts,
    std::vector<std::vector<BigInt>> pair_counts) {
  RatioMatrix m;
  const std::size_t c = criterion.size();
  m.criterion = std::move(criterion);
  m.single_counts = std::move(single_counts);
  m.pair_counts = std::move(pair_counts);
  m.ratio.assign(c, std::vector<Rational>(c));
  for (std::size_t f = 0; f < c; ++f) {
    for (std::size_t e = 0; e < c; ++e) {
      m.ratio[f][e] = Rational(m.pair_counts[e][f], m.single_counts[e]);
    }
  }
  return m;
}

RatioMatrix build_ratio_matrix(const Grammar& g, std::size_t n,
                               Execution exec) {
  CoverageTables tables(g, exec);
  const BigInt total = tables.total(n);
  if (total.is_zero()) throw EmptyLanguageAtSize(n);

  std::vector<SymbolId> criterion;
  std::vector<BigInt> singles;
  std::vector<ExcludedSymbol> excluded;
  for (SymbolId x = 0; x < g.nonterminal_count(); ++x) {
    BigInt c = tables.covering_count(x, n);
    if (!c.is_zero()) {
      criterion.push_back(x);
      singles.push_back(std::move(c));
      continue;
    }
    ExcludedSymbol ex{x, std::nullopt, {}};
    const CountTable& t = tables.cover_table(x, 4 * n);
    const SymbolId start = tables.cover(x).derived().start();
    for (std::size_t k = 1; k <= 4 * n; ++k) {
      if (!t.count(start, k).is_zero()) {
        ex.first_coverable_size = k;
        break;
      }
    }
    ex.warning = "non-terminal '" + g.nonterminals()[x] +
                 "' is not covered by any tree of size " + std::to_string(n);
    ex.warning += ex.first_coverable_size
                      ? "; smallest coverable size is " +
                            std::to_string(*ex.first_coverable_size)
                      : "; no covering tree up to size " +
                            std::to_string(4 * n);
    ex.warning += "; excluded from the criterion";
    excluded.push_back(std::move(ex));
  }

  const std::size_t c = criterion.size();
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = i + 1; j < c; ++j) jobs.emplace_back(i, j);
  }
  std::vector<BigInt> results(jobs.size());
  const auto job_count = static_cast<std::ptrdiff_t>(jobs.size());
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < job_count; ++k) {
      results[k] = pair_covering_count(g, criterion[jobs[k].first],
                                       criterion[jobs[k].second], n);
    }
  } else {
    for (std::ptrdiff_t k = 0; k < job_count; ++k) {
      results[k] = pair_covering_count(g, criterion[jobs[k].first],
                                       criterion[jobs[k].second], n);
    }
  }

  std::vector<std::vector<BigInt>> pairs(c, std::vector<BigInt>(c));
  for (std::size_t i = 0; i < c; ++i) pairs[i][i] = singles[i];
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    pairs[jobs[k].first][jobs[k].second] = results[k];
    pairs[jobs[k].second][jobs[k].first] = results[k];
  }

  RatioMatrix m = ratio_matrix_from_counts(std::move(criterion),
                                           std::move(singles),
                                           std::move(pairs));
  m.size = n;
  m.total = total;
  m.excluded = std::move(excluded);
  return m;
}

namespace {

template <typename Number>
struct Arith;

template <>
struct Arith<Rational> {
  static Rational from(const Rational& r) { return r; }
  static bool positive(const Rational& x) { return x > 0; }
};

template <>
struct Arith<double> {
  static constexpr double kEps = 1e-12;
  static double from(const Rational& r) { return to_double(r); }
  static bool positive(double x) { return x > kEps; }
};

// Tableau for: maximise p s.t. p - sum_e r[f][e] pi_e <= 0 (one row per f),
// sum_e pi_e <= 1, p, pi >= 0. Columns: p, pi_1..pi_c, slacks, rhs. Because
// every ratio is non-negative, any leftover mass 1 - sum pi can be given to
// an arbitrary element without violating a row, so the inequality version has
// the same optimum as the equality one and the origin is a feasible start.
template <typename Number>
StrategySolution<Number> solve(const std::vector<std::vector<Rational>>& r) {
  using A = Arith<Number>;
  StrategySolution<Number> out;
  const std::size_t c = r.size();
  if (c == 0) return out;
  const std::size_t rows = c + 1;
  const std::size_t vars = 1 + c + rows;
  const std::size_t rhs = vars;

  std::vector<std::vector<Number>> t(rows, std::vector<Number>(vars + 1));
  std::vector<std::size_t> basis(rows);
  for (std::size_t f = 0; f < c; ++f) {
    t[f][0] = 1;
    for (std::size_t e = 0; e < c; ++e) t[f][1 + e] = -A::from(r[f][e]);
    t[f][1 + c + f] = 1;
    basis[f] = 1 + c + f;
  }
  for (std::size_t e = 0; e < c; ++e) t[c][1 + e] = 1;
  t[c][1 + c + c] = 1;
  t[c][rhs] = 1;
  basis[c] = 1 + c + c;

  // Reduced costs for maximisation; objective value in obj[rhs].
  std::vector<Number> obj(vars + 1);
  obj[0] = 1;

  for (;;) {
    std::size_t enter = vars;
    for (std::size_t j = 0; j < vars; ++j) {
      if (A::positive(obj[j])) {
        enter = j;
        break;
      }
    }
    if (enter == vars) break;

    std::size_t leave = rows;
    Number best{};
    for (std::size_t i = 0; i < rows; ++i) {
      if (!A::positive(t[i][enter])) continue;
      Number ratio = t[i][rhs] / t[i][enter];
      if (leave == rows || ratio < best ||
          (!(best < ratio) && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == rows) {
      throw std::logic_error("max-min program reported unbounded");
    }

    const Number pivot = t[leave][enter];
    for (auto& v : t[leave]) v /= pivot;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave) continue;
      const Number factor = t[i][enter];
      if (factor == 0) continue;
      for (std::size_t j = 0; j <= vars; ++j) t[i][j] -= factor * t[leave][j];
    }
    const Number factor = obj[enter];
    for (std::size_t j = 0; j <= vars; ++j) obj[j] -= factor * t[leave][j];
    basis[leave] = enter;
    ++out.pivots;
  }

  out.status = SolveStatus::kOptimal;
  out.pi.assign(c, Number{});
  Number p{};
  for (std::size_t i = 0; i < rows; ++i) {
    if (basis[i] == 0) p = t[i][rhs];
    if (basis[i] >= 1 && basis[i] <= c) out.pi[basis[i] - 1] = t[i][rhs];
  }
  for (auto& v : out.pi) {
    if (v < 0) v = 0;  // round-off in float mode
  }
  Number sum{};
  for (const auto& v : out.pi) sum += v;
  if (sum < 1) out.pi[0] += 1 - sum;
  out.p = p;

  Number certificate{};
  for (std::size_t f = 0; f < c; ++f) {
    Number row{};
    for (std::size_t e = 0; e < c; ++e) row += out.pi[e] * A::from(r[f][e]);
    if (f == 0 || row < certificate) certificate = row;
  }
  out.certificate = certificate;
  return out;
}

}  // namespace

StrategySolution<Rational> solve_maxmin(
    const std::vector<std::vector<Rational>>& ratio) {
  return solve<Rational>(ratio);
}

StrategySolution<double> solve_maxmin_float(
    const std::vector<std::vector<Rational>>& ratio) {
  return solve<double>(ratio);
}

Rational min_row_value(const std::vector<std::vector<Rational>>& ratio,
                       const std::vector<Rational>& pi) {
  Rational best = 0;
  for (std::size_t f = 0; f < ratio.size(); ++f) {
    Rational row = 0;
    for (std::size_t e = 0; e < pi.size(); ++e) row += pi[e] * ratio[f][e];
    if (f == 0 || row < best) best = row;
  }
  return best;
}

Rational isotropic_coverage_bound(const Rational& p_min, std::size_t draws) {
  const Rational miss = 1 - p_min;
  const auto n = static_cast<unsigned>(draws);
  const Rational all_miss(
      boost::multiprecision::pow(boost::multiprecision::numerator(miss), n),
      boost::multiprecision::pow(boost::multiprecision::denominator(miss), n));
  return 1 - all_miss;
}

}  // namespace gramcov
