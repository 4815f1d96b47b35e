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

#ifndef GRAMCOV_SAMPLER_HPP_
#define GRAMCOV_SAMPLER_HPP_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "gramcov/counting.hpp"
#include "gramcov/grammar.hpp"
#include "gramcov/random.hpp"
#include "gramcov/tree.hpp"

namespace gramcov {

// No derivation tree of the requested size exists.
class SizeUnrealizable : public std::runtime_error {
 public:
  SizeUnrealizable(const std::string& nonterminal, std::size_t size);
  std::size_t size() const { return size_; }

 private:
  std::size_t size_;
};

// Uniform random derivation tree of exactly `size` nodes rooted at `root`.
//
// At each node the applied rule is drawn with probability
// alpha_r(size) / s(size), then the sizes of the non-terminal children are
// drawn with joint probability prod s_j(l_j) / alpha_r(size), one child at a
// time from exact marginals. Every tree of that size is equally likely. All
// arithmetic is on exact integers.
//
// `table` must have been built from `g` with max_size() >= size. Throws
// SizeUnrealizable when s(size) == 0 for the root.
DerivationTree sample_tree(const Grammar& g, const CountTable& table,
                           SymbolId root, std::size_t size, RandomSource& rng);

// Index into `rules` drawn with probability alpha(size) / sum of alphas.
// Precondition: the sum is positive.
std::size_t sample_rule(std::span<const RuleId> rules, std::size_t size,
                        const CountTable& table, RandomSource& rng);

// Unnormalised weights for the size of child `position` of `rule`, given that
// children position.. share `budget`: entry l is s_position(l) *
// suffix(rule, position + 1, budget - l) (or just s(budget) at index budget for
// the last child). The weights sum to suffix(rule, position, budget).
std::vector<BigInt> composition_step_weights(const CountTable& table,
                                             RuleId rule, std::size_t position,
                                             std::size_t budget);

// Sizes for the non-terminal children of `rule` summing to `budget`, drawn with
// probability prod s_j(l_j) / suffix(rule, 0, budget).
std::vector<std::size_t> sample_composition(const CountTable& table,
                                            RuleId rule, std::size_t budget,
                                            RandomSource& rng);

}  // namespace gramcov

#endif  // GRAMCOV_SAMPLER_HPP_
