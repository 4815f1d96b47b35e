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

#ifndef GRAMCOV_COUNTING_HPP_
#define GRAMCOV_COUNTING_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "gramcov/grammar.hpp"
#include "gramcov/numeric.hpp"

namespace gramcov {

// Weight of a rule: 1 + number of terminal occurrences in its rhs. A tree's
// size is the sum of the weights of its applied rules.
std::size_t beta(const Rule& r);

// Exact counts s(k) of derivation trees of size k rooted at each non-terminal,
// for 1 <= k <= max_size, plus the per-rule quantities the sampler needs.
//
// For a rule r = S -> w1 S1 ... wm Sm w(m+1), alpha_r(k) counts the size-k
// trees whose root applies r. With m >= 1 it is the sum over compositions
// i1 + ... + im = k - beta(r) of s1(i1) * ... * sm(im). The table stores that
// sum through suffix convolutions:
//
//   suffix(r, j, t) = number of ways children j..m-1 split a budget of t,
//
// so alpha_r(k) = suffix(r, 0, k - beta(r)). The same suffixes give the exact
// marginal for each child's size when sampling.
//
// The table copies what it needs from the grammar and does not keep a
// reference to it.
class CountTable {
 public:
  // Throws GrammarError if validate() reports errors and
  // std::invalid_argument if max_size is 0.
  CountTable(const Grammar& g, std::size_t max_size,
             Execution exec = Execution::kSerial);

  std::size_t max_size() const { return max_size_; }
  std::size_t nonterminal_count() const { return counts_.size(); }
  std::size_t rule_count() const { return rules_.size(); }

  // s(k) for the non-terminal; zero for k == 0. Throws std::out_of_range for
  // k > max_size().
  const BigInt& count(SymbolId nonterminal, std::size_t k) const;
  // s(0..max_size) for the non-terminal.
  std::span<const BigInt> counts(SymbolId nonterminal) const {
    return counts_[nonterminal];
  }

  const BigInt& alpha(RuleId rule, std::size_t k) const;
  std::size_t beta(RuleId rule) const { return rules_[rule].beta; }
  std::span<const SymbolId> rhs_nonterminals(RuleId rule) const {
    return rules_[rule].children;
  }
  const BigInt& suffix(RuleId rule, std::size_t position,
                       std::size_t budget) const;

  // Extends every array to the new size. No-op when n <= max_size().
  void extend_to(std::size_t n, Execution exec = Execution::kSerial);

 private:
  struct RuleProfile {
    SymbolId lhs;
    std::size_t beta;
    std::vector<SymbolId> children;
    // suffix[j][t], j over children, t in 0..max_size.
    std::vector<std::vector<BigInt>> suffix;
  };

  BigInt compute_alpha(RuleProfile& r, std::size_t k);

  std::size_t max_size_ = 0;
  std::vector<RuleProfile> rules_;
  std::vector<std::vector<BigInt>> counts_;
};

// |E_n(G)|: the number of size-n derivation trees rooted at the start symbol.
BigInt count_trees(const Grammar& g, std::size_t n);

}  // namespace gramcov

#endif  // GRAMCOV_COUNTING_HPP_
