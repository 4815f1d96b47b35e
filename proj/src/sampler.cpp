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

#include "gramcov/sampler.hpp"

#include <string>

namespace gramcov {

SizeUnrealizable::SizeUnrealizable(const std::string& nonterminal,
                                   std::size_t size)
    : std::runtime_error("no derivation tree of size " + std::to_string(size) +
                         " rooted at '" + nonterminal + "'"),
      size_(size) {}

namespace {

// Picks the first index whose running weight exceeds a uniform draw in
// [0, total).
template <typename WeightAt>
std::size_t pick_weighted(std::size_t count, const BigInt& total,
                          WeightAt weight_at, RandomSource& rng) {
  BigInt target = rng.uniform_below(total);
  for (std::size_t i = 0; i < count; ++i) {
    const BigInt& w = weight_at(i);
    if (target < w) return i;
    target -= w;
  }
  throw std::logic_error("weights do not add up to the total");
}

}  // namespace

std::size_t sample_rule(std::span<const RuleId> rules, std::size_t size,
                        const CountTable& table, RandomSource& rng) {
  BigInt total = 0;
  for (RuleId r : rules) total += table.alpha(r, size);
  return pick_weighted(
      rules.size(), total,
      [&](std::size_t i) -> const BigInt& { return table.alpha(rules[i], size); },
      rng);
}

std::vector<BigInt> composition_step_weights(const CountTable& table,
                                             RuleId rule, std::size_t position,
                                             std::size_t budget) {
  const auto children = table.rhs_nonterminals(rule);
  const auto head = table.counts(children[position]);
  std::vector<BigInt> weights(budget + 1);
  if (position + 1 == children.size()) {
    weights[budget] = head[budget];
    return weights;
  }
  for (std::size_t l = 1; l < budget; ++l) {
    const BigInt& tail = table.suffix(rule, position + 1, budget - l);
    if (head[l].is_zero() || tail.is_zero()) continue;
    weights[l] = head[l] * tail;
  }
  return weights;
}

std::vector<std::size_t> sample_composition(const CountTable& table,
                                            RuleId rule, std::size_t budget,
                                            RandomSource& rng) {
  const std::size_t m = table.rhs_nonterminals(rule).size();
  std::vector<std::size_t> sizes;
  sizes.reserve(m);
  std::size_t remaining = budget;
  for (std::size_t j = 0; j + 1 < m; ++j) {
    const auto weights = composition_step_weights(table, rule, j, remaining);
    const BigInt& total = table.suffix(rule, j, remaining);
    const std::size_t l = pick_weighted(
        weights.size(), total,
        [&](std::size_t i) -> const BigInt& { return weights[i]; }, rng);
    sizes.push_back(l);
    remaining -= l;
  }
  if (m != 0) sizes.push_back(remaining);
  return sizes;
}

DerivationTree sample_tree(const Grammar& g, const CountTable& table,
                           SymbolId root, std::size_t size, RandomSource& rng) {
  if (size == 0 || size > table.max_size()) {
    if (size == 0) throw SizeUnrealizable(g.nonterminals()[root], size);
    throw std::out_of_range("count table too small for requested size");
  }
  if (table.count(root, size).is_zero()) {
    throw SizeUnrealizable(g.nonterminals()[root], size);
  }

  struct Pending {
    std::uint32_t node;
    std::size_t size;
  };
  std::vector<TreeNode> nodes{
      {NodeKind::kNonterminal, root, kNoRule, 0, 0}};
  std::vector<Pending> stack{{0, size}};
  while (!stack.empty()) {
    const Pending p = stack.back();
    stack.pop_back();
    const SymbolId nt = nodes[p.node].symbol;
    const auto candidates = g.rules_for(nt);
    const RuleId rule = candidates[sample_rule(candidates, p.size, table, rng)];
    const Rule& r = g.rule(rule);
    const auto child_sizes =
        sample_composition(table, rule, p.size - table.beta(rule), rng);

    const auto first = static_cast<std::uint32_t>(nodes.size());
    nodes[p.node].rule = rule;
    nodes[p.node].first_child = first;
    if (r.rhs.empty()) {
      nodes[p.node].child_count = 1;
      nodes.push_back({NodeKind::kEpsilon, 0, kNoRule, 0, 0});
      continue;
    }
    nodes[p.node].child_count = static_cast<std::uint32_t>(r.rhs.size());
    for (const Symbol& s : r.rhs) {
      nodes.push_back({s.is_terminal() ? NodeKind::kTerminal
                                       : NodeKind::kNonterminal,
                       s.id, kNoRule, 0, 0});
    }
    // Push right to left so the leftmost child is expanded next.
    std::size_t j = child_sizes.size();
    for (std::size_t c = r.rhs.size(); c-- > 0;) {
      if (r.rhs[c].is_nonterminal()) {
        stack.push_back({first + static_cast<std::uint32_t>(c), child_sizes[--j]});
      }
    }
  }
  return DerivationTree(std::move(nodes));
}

}  // namespace gramcov
