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

#ifndef GRAMCOV_ORACLE_HPP_
#define GRAMCOV_ORACLE_HPP_

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gramcov/grammar.hpp"
#include "gramcov/numeric.hpp"
#include "gramcov/tree.hpp"

// Exhaustive enumeration of small derivation trees. This is the ground truth
// the counting, covering and sampling code is checked against, so it shares
// none of their machinery: no count tables, no tagged grammars.
namespace gramcov::oracle {

inline constexpr std::size_t kDefaultCap = 14;

class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::size_t size, std::size_t cap);
};

// Every derivation tree of exactly `size` nodes rooted at `root`, built by
// recursion over rules and over all splits of the remaining size among the
// non-terminal children. Trees are listed in rule order, then by increasing
// size of the leftmost child.
std::vector<DerivationTree> enumerate_trees(const Grammar& g, SymbolId root,
                                            std::size_t size,
                                            std::size_t cap = kDefaultCap);

// all[k] = |E_k|, single[x][k] = |E_{x,k}|, pair[x][y][k] = |E_{x,y,k}| for
// k in 0..max_size (index 0 unused).
struct OracleCounts {
  std::vector<BigInt> all;
  std::vector<std::vector<BigInt>> single;
  std::vector<std::vector<std::vector<BigInt>>> pair;
};

OracleCounts oracle_counts(const Grammar& g, std::size_t max_size,
                           std::size_t cap = kDefaultCap);

}  // namespace gramcov::oracle

#endif  // GRAMCOV_ORACLE_HPP_
