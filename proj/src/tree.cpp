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

#include "gramcov/tree.hpp"

#include <algorithm>
#include <utility>

namespace gramcov {

namespace {

// Preorder visit with an explicit stack. `on_enter` sees each node index;
// `on_exit` runs after all of a node's children.
template <typename Enter, typename Exit>
void walk(const DerivationTree& t, Enter on_enter, Exit on_exit) {
  if (t.empty()) return;
  struct Frame {
    std::uint32_t node;
    std::uint32_t next_child;
  };
  std::vector<Frame> stack{{0, 0}};
  on_enter(std::uint32_t{0});
  while (!stack.empty()) {
    Frame& f = stack.back();
    const TreeNode& n = t.node(f.node);
    if (f.next_child == n.child_count) {
      on_exit(f.node);
      stack.pop_back();
      continue;
    }
    const std::uint32_t child = n.first_child + f.next_child++;
    on_enter(child);
    stack.push_back({child, 0});
  }
}

}  // namespace

bool operator==(const DerivationTree& a, const DerivationTree& b) {
  if (a.nodes_.size() != b.nodes_.size()) return false;
  if (a.empty()) return true;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [i, j] = stack.back();
    stack.pop_back();
    const TreeNode& x = a.node(i);
    const TreeNode& y = b.node(j);
    if (x.kind != y.kind || x.child_count != y.child_count ||
        x.rule != y.rule ||
        (x.kind != NodeKind::kEpsilon && x.symbol != y.symbol)) {
      return false;
    }
    for (std::uint32_t c = 0; c < x.child_count; ++c) {
      stack.emplace_back(x.first_child + c, y.first_child + c);
    }
  }
  return true;
}

DerivationTree TreeBuilder::terminal(SymbolId id) {
  return DerivationTree({{NodeKind::kTerminal, id, kNoRule, 0, 0}});
}

DerivationTree TreeBuilder::epsilon() {
  return DerivationTree({{NodeKind::kEpsilon, 0, kNoRule, 0, 0}});
}

DerivationTree TreeBuilder::node(const Grammar& g, RuleId rule,
                                 std::span<const DerivationTree> children) {
  std::vector<TreeNode> nodes;
  nodes.push_back({NodeKind::kNonterminal, g.rule(rule).lhs, rule, 1,
                   static_cast<std::uint32_t>(children.size())});
  // Reserve the contiguous child slots first, then append each subtree's
  // descendants and patch the slot.
  nodes.resize(1 + children.size());
  for (std::size_t c = 0; c < children.size(); ++c) {
    const DerivationTree& sub = children[c];
    TreeNode root = sub.root();
    const auto base = static_cast<std::uint32_t>(nodes.size());
    // Descendants of sub's root are sub's nodes 1..; shift them by base - 1.
    for (std::size_t k = 1; k < sub.nodes().size(); ++k) {
      TreeNode copy = sub.nodes()[k];
      if (copy.child_count != 0) copy.first_child += base - 1;
      nodes.push_back(copy);
    }
    if (root.child_count != 0) root.first_child += base - 1;
    nodes[1 + c] = root;
  }
  return DerivationTree(std::move(nodes));
}

DerivationTree TreeBuilder::apply(const Grammar& g, RuleId rule,
                                  std::span<const DerivationTree> subtrees) {
  const Rule& r = g.rule(rule);
  std::vector<DerivationTree> children;
  if (r.rhs.empty()) {
    children.push_back(epsilon());
  } else {
    std::size_t next = 0;
    for (const Symbol& s : r.rhs) {
      if (s.is_terminal()) {
        children.push_back(terminal(s.id));
      } else {
        if (next >= subtrees.size()) {
          throw GrammarError("TreeBuilder::apply: too few subtrees");
        }
        children.push_back(subtrees[next++]);
      }
    }
    if (next != subtrees.size()) {
      throw GrammarError("TreeBuilder::apply: too many subtrees");
    }
  }
  return node(g, rule, children);
}

std::size_t tree_size(const DerivationTree& t) {
  return static_cast<std::size_t>(
      std::count_if(t.nodes().begin(), t.nodes().end(), [](const TreeNode& n) {
        return n.kind != NodeKind::kEpsilon;
      }));
}

std::string yield_string(const Grammar& g, const DerivationTree& t,
                         std::string_view separator) {
  std::string out;
  bool first = true;
  walk(
      t,
      [&](std::uint32_t i) {
        const TreeNode& n = t.node(i);
        if (n.kind != NodeKind::kTerminal) return;
        if (!first) out += separator;
        out += g.terminals()[n.symbol];
        first = false;
      },
      [](std::uint32_t) {});
  return out;
}

bool covers(const DerivationTree& t, SymbolId nonterminal) {
  return std::any_of(t.nodes().begin(), t.nodes().end(), [&](const TreeNode& n) {
    return n.kind == NodeKind::kNonterminal && n.symbol == nonterminal;
  });
}

std::vector<bool> covered_nonterminals(const DerivationTree& t,
                                       std::size_t nonterminal_count) {
  std::vector<bool> out(nonterminal_count, false);
  for (const TreeNode& n : t.nodes()) {
    if (n.kind == NodeKind::kNonterminal && n.symbol < nonterminal_count) {
      out[n.symbol] = true;
    }
  }
  return out;
}

std::optional<std::string> check_tree(const Grammar& g,
                                      const DerivationTree& t,
                                      SymbolId root) {
  if (t.empty()) return "empty tree";
  const TreeNode& r = t.root();
  if (r.kind != NodeKind::kNonterminal || r.symbol != root) {
    return "root is not labelled by the expected non-terminal";
  }
  std::vector<bool> seen(t.nodes().size(), false);
  std::vector<std::uint32_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const std::uint32_t i = stack.back();
    stack.pop_back();
    const TreeNode& n = t.node(i);
    if (n.kind != NodeKind::kNonterminal) {
      if (n.child_count != 0) return "leaf node with children";
      if (n.kind == NodeKind::kTerminal && n.symbol >= g.terminal_count()) {
        return "terminal id out of range";
      }
      continue;
    }
    if (n.rule >= g.rules().size()) return "node without a valid rule";
    const Rule& rule = g.rule(n.rule);
    if (rule.lhs != n.symbol) return "applied rule does not match node label";
    if (static_cast<std::size_t>(n.first_child) + n.child_count >
        t.nodes().size()) {
      return "child range out of bounds";
    }
    const auto kids = t.children(i);
    if (rule.rhs.empty()) {
      if (kids.size() != 1 || kids[0].kind != NodeKind::kEpsilon) {
        return "epsilon rule must have a single epsilon child";
      }
    } else {
      if (kids.size() != rule.rhs.size()) return "child count mismatch";
      for (std::size_t c = 0; c < kids.size(); ++c) {
        const Symbol expected = rule.rhs[c];
        const NodeKind want = expected.is_terminal() ? NodeKind::kTerminal
                                                     : NodeKind::kNonterminal;
        if (kids[c].kind != want || kids[c].symbol != expected.id) {
          return "children do not spell the rule's right-hand side";
        }
      }
    }
    for (std::uint32_t c = 0; c < n.child_count; ++c) {
      const std::uint32_t child = n.first_child + c;
      if (seen[child]) return "node shared between parents";
      seen[child] = true;
      stack.push_back(child);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    return "unreachable node in storage";
  }
  return std::nullopt;
}

namespace {

template <typename Label>
std::string bracketed(const DerivationTree& t, Label label) {
  std::string out;
  std::vector<bool> needs_space{false};
  walk(
      t,
      [&](std::uint32_t i) {
        if (needs_space.back()) out += ' ';
        needs_space.back() = true;
        const TreeNode& n = t.node(i);
        out += label(n);
        if (n.child_count != 0) {
          out += '(';
          needs_space.push_back(false);
        }
      },
      [&](std::uint32_t i) {
        if (t.node(i).child_count != 0) {
          out += ')';
          needs_space.pop_back();
        }
      });
  return out;
}

}  // namespace

std::string canonical_form(const DerivationTree& t) {
  return bracketed(t, [](const TreeNode& n) {
    switch (n.kind) {
      case NodeKind::kNonterminal:
        return "N" + std::to_string(n.symbol) + "r" + std::to_string(n.rule);
      case NodeKind::kTerminal:
        return "t" + std::to_string(n.symbol);
      case NodeKind::kEpsilon:
        break;
    }
    return std::string("e");
  });
}

std::string render_tree(const Grammar& g, const DerivationTree& t) {
  return bracketed(t, [&](const TreeNode& n) {
    switch (n.kind) {
      case NodeKind::kNonterminal:
        return g.nonterminals()[n.symbol];
      case NodeKind::kTerminal:
        return "\"" + g.terminals()[n.symbol] + "\"";
      case NodeKind::kEpsilon:
        break;
    }
    return std::string("ε");
  });
}

}  // namespace gramcov
