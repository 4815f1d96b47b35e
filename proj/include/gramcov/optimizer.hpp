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

#ifndef GRAMCOV_OPTIMIZER_HPP_
#define GRAMCOV_OPTIMIZER_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gramcov/cover.hpp"
#include "gramcov/grammar.hpp"
#include "gramcov/numeric.hpp"

namespace gramcov {

class EmptyLanguageAtSize : public std::runtime_error {
 public:
  explicit EmptyLanguageAtSize(std::size_t size);
  std::size_t size() const { return size_; }

 private:
  std::size_t size_;
};

struct ExcludedSymbol {
  SymbolId nonterminal;
  // Smallest size in 1..4n with a covering tree, if any.
  std::optional<std::size_t> first_coverable_size;
  std::string warning;
};

// ratio[f][e] = |E_{e,f,n}(G)| / |E_{e,n}(G)|: the probability that a uniform
// size-n tree covering e also covers f. Rows and columns follow `criterion`.
struct RatioMatrix {
  std::size_t size = 0;
  std::vector<SymbolId> criterion;
  std::vector<BigInt> single_counts;              // |E_{e,n}|, per criterion
  std::vector<std::vector<BigInt>> pair_counts;   // |E_{e,f,n}|, symmetric
  std::vector<std::vector<Rational>> ratio;       // [f][e]
  std::vector<ExcludedSymbol> excluded;
  BigInt total;                                   // |E_n(G)|
};

// Criterion is every non-terminal of `g` with a size-n covering tree; the
// others go to `excluded`. Each unordered pair's covering grammar is counted
// once. With Execution::kParallel the pairs are spread over OpenMP threads.
// Throws EmptyLanguageAtSize when G has no tree of size n.
RatioMatrix build_ratio_matrix(const Grammar& g, std::size_t n,
                               Execution exec = Execution::kSerial);

// Same, from precomputed counts (used by tests and by the scaling property).
RatioMatrix ratio_matrix_from_counts(std::vector<SymbolId> criterion,
                                     std::vector<BigInt> single_counts,
                                     std::vector<std::vector<BigInt>> pair_counts);

enum class SolveStatus { kOptimal, kEmptyCriterion };

template <typename Number>
struct StrategySolution {
  SolveStatus status = SolveStatus::kEmptyCriterion;
  std::vector<Number> pi;  // per criterion element
  Number p{};              // optimal value reported by the simplex
  Number certificate{};    // min over rows f of sum_e pi_e ratio[f][e]
  std::size_t pivots = 0;
};

// maximise p subject to p <= sum_e pi_e ratio[f][e] for all f, sum pi = 1,
// pi >= 0, by a dense tableau simplex with Bland's rule. Exact in rationals.
StrategySolution<Rational> solve_maxmin(
    const std::vector<std::vector<Rational>>& ratio);

// Floating-point variant for large criteria. Pivots below 1e-12 are treated as
// zero.
StrategySolution<double> solve_maxmin_float(
    const std::vector<std::vector<Rational>>& ratio);

// min over rows of sum_e pi_e ratio[f][e].
Rational min_row_value(const std::vector<std::vector<Rational>>& ratio,
                       const std::vector<Rational>& pi);

// 1 - (1 - p_min)^N: probability that N criterion-blind uniform draws cover
// everything when each element is covered with probability at least p_min.
Rational isotropic_coverage_bound(const Rational& p_min, std::size_t draws);

}  // namespace gramcov

#endif  // GRAMCOV_OPTIMIZER_HPP_
