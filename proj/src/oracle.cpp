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

#include "gramcov/oracle.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>

namespace gramcov::oracle {

CapExceeded::CapExceeded(std::size_t size, std::size_t cap)
    : std::runtime_error("enumeration of size " + std::to_string(size) +
                         " exceeds the cap of " + std::to_string(cap)) {}

namespace {

class Enumerator {
 public:
  explicit Enumerator(const Grammar& g) : g_(g) {}

  const std::vector<DerivationTree>& trees(SymbolId root, std::size_t size) {
    auto key = std::make_pair(root, size);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<DerivationTree> out;
    for (RuleId rule : g_.rules_for(root)) {
      const Rule& r = g_.rule(rule);
      std::size_t weight = 1;
      std::vector<SymbolId> children;
      for (const Symbol& s : r.rhs) {
        if (s.is_terminal()) {
          ++weight;
        } else {
          children.push_back(s.id);
        }
      }
      if (size < weight) continue;
      if (children.empty()) {
        if (size == weight) out.push_back(TreeBuilder::apply(g_, rule, {}));
        continue;
      }
      std::vector<DerivationTree> chosen;
      extend(rule, children, 0, size - weight, chosen, out);
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  // Chooses a subtree for child `j` of every admissible size, then recurses.
  void extend(RuleId rule, const std::vector<SymbolId>& children,
              std::size_t j, std::size_t remaining,
              std::vector<DerivationTree>& chosen,
              std::vector<DerivationTree>& out) {
    if (j == children.size()) {
      if (remaining == 0) out.push_back(TreeBuilder::apply(g_, rule, chosen));
      return;
    }
    const std::size_t later = children.size() - j - 1;
    const std::size_t first = later == 0 ? remaining : 1;
    for (std::size_t k = first; k + later <= remaining; ++k) {
      // std::map keeps references valid across the nested insertions.
      const std::vector<DerivationTree>& options = trees(children[j], k);
      for (const DerivationTree& sub : options) {
        chosen.push_back(sub);
        extend(rule, children, j + 1, remaining - k, chosen, out);
        chosen.pop_back();
      }
    }
  }

  const Grammar& g_;
  std::map<std::pair<SymbolId, std::size_t>, std::vector<DerivationTree>>
      memo_;
};

}  // namespace

std::vector<DerivationTree> enumerate_trees(const Grammar& g, SymbolId root,
                                            std::size_t size, std::size_t cap) {
  if (size > cap) throw CapExceeded(size, cap);
  if (root >= g.nonterminal_count()) {
    throw GrammarError("enumeration root out of range");
  }
  Enumerator e(g);
  std::vector<DerivationTree> out = e.trees(root, size);
  // The recursion never yields the same tree twice; check it.
  std::set<std::string> seen;
  for (const DerivationTree& t : out) {
    if (!seen.insert(canonical_form(t)).second) {
      throw std::logic_error("oracle produced a duplicate tree");
    }
  }
  return out;
}

OracleCounts oracle_counts(const Grammar& g, std::size_t max_size,
                           std::size_t cap) {
  if (max_size > cap) throw CapExceeded(max_size, cap);
  const std::size_t nts = g.nonterminal_count();
  OracleCounts out;
  out.all.assign(max_size + 1, 0);
  out.single.assign(nts, std::vector<BigInt>(max_size + 1, 0));
  out.pair.assign(nts, std::vector<std::vector<BigInt>>(
                           nts, std::vector<BigInt>(max_size + 1, 0)));
  Enumerator e(g);
  for (std::size_t k = 1; k <= max_size; ++k) {
    for (const DerivationTree& t : e.trees(g.start(), k)) {
      out.all[k] += 1;
      const auto seen = covered_nonterminals(t, nts);
      for (SymbolId x = 0; x < nts; ++x) {
        if (!seen[x]) continue;
        out.single[x][k] += 1;
        for (SymbolId y = 0; y < nts; ++y) {
          if (seen[y]) out.pair[x][y][k] += 1;
        }
      }
    }
  }
  return out;
}

}  // namespace gramcov::oracle
