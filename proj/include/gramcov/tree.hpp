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

#ifndef GRAMCOV_TREE_HPP_
#define GRAMCOV_TREE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gramcov/grammar.hpp"

namespace gramcov {

enum class NodeKind : std::uint8_t { kNonterminal, kTerminal, kEpsilon };

inline constexpr RuleId kNoRule = static_cast<RuleId>(-1);

struct TreeNode {
  NodeKind kind;
  SymbolId symbol;  // unused for kEpsilon
  RuleId rule;      // applied rule on non-terminal nodes, kNoRule on leaves
  std::uint32_t first_child;
  std::uint32_t child_count;

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

// Derivation tree stored as a flat node array. Node 0 is the root and the
// children of every node occupy a contiguous index range. Trees are built
// once (by the sampler, the oracle, or TreeBuilder) and then treated as
// immutable values; all traversals are iterative so depth is not limited by
// the call stack.
class DerivationTree {
 public:
  DerivationTree() = default;
  explicit DerivationTree(std::vector<TreeNode> nodes)
      : nodes_(std::move(nodes)) {}

  bool empty() const { return nodes_.empty(); }
  std::span<const TreeNode> nodes() const { return nodes_; }
  const TreeNode& node(std::uint32_t i) const { return nodes_[i]; }
  const TreeNode& root() const { return nodes_.front(); }
  std::span<const TreeNode> children(std::uint32_t i) const {
    const TreeNode& n = nodes_[i];
    return std::span<const TreeNode>(nodes_).subspan(n.first_child,
                                                     n.child_count);
  }

  // Structural equality, independent of node storage order.
  friend bool operator==(const DerivationTree& a, const DerivationTree& b);

 private:
  std::vector<TreeNode> nodes_;
};

// Composes trees bottom-up. Used by the oracle and by tests to write trees
// by hand.
class TreeBuilder {
 public:
  static DerivationTree terminal(SymbolId id);
  static DerivationTree epsilon();
  // A non-terminal node applying `rule`; `children` are copied in order.
  static DerivationTree node(const Grammar& g, RuleId rule,
                             std::span<const DerivationTree> children);
  // Convenience: builds the node for `rule` whose terminal children are
  // created automatically and whose non-terminal children are taken, in
  // order, from `subtrees`.
  static DerivationTree apply(const Grammar& g, RuleId rule,
                              std::span<const DerivationTree> subtrees);
};

// Number of nodes labelled by a terminal or non-terminal. Epsilon leaves are
// not counted, so the size is also the sum of rule weights over the tree.
std::size_t tree_size(const DerivationTree& t);

// Terminal leaves concatenated left to right, separated by `separator`.
std::string yield_string(const Grammar& g, const DerivationTree& t,
                         std::string_view separator = "");

bool covers(const DerivationTree& t, SymbolId nonterminal);

// Set of non-terminals labelling some node, indexed by id.
std::vector<bool> covered_nonterminals(const DerivationTree& t,
                                       std::size_t nonterminal_count);

// Returns a description of the first structural problem, or nullopt when `t`
// is a derivation tree of `g` rooted at `root`.
std::optional<std::string> check_tree(const Grammar& g,
                                      const DerivationTree& t,
                                      SymbolId root);

// Unambiguous prefix serialization over symbol and rule ids, e.g.
// `N0r1(t0 N0r0(N1r2(e) t1) t1)`.
// Equal strings <=> structurally equal trees.
std::string canonical_form(const DerivationTree& t);

// Bracketed rendering with symbol names, for diagnostics.
std::string render_tree(const Grammar& g, const DerivationTree& t);

}  // namespace gramcov

#endif  // GRAMCOV_TREE_HPP_
