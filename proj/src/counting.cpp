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

#include "gramcov/counting.hpp"

#include <algorithm>
#include <stdexcept>

namespace gramcov {

namespace {

const BigInt& zero() {
  static const BigInt z = 0;
  return z;
}

const BigInt& one() {
  static const BigInt o = 1;
  return o;
}

}  // namespace

std::size_t beta(const Rule& r) {
  return 1 + static_cast<std::size_t>(std::count_if(
                 r.rhs.begin(), r.rhs.end(),
                 [](Symbol s) { return s.is_terminal(); }));
}

CountTable::CountTable(const Grammar& g, std::size_t max_size,
                       Execution exec) {
  require_valid(g);
  if (max_size == 0) throw std::invalid_argument("max_size must be >= 1");
  rules_.reserve(g.rules().size());
  for (const Rule& r : g.rules()) {
    RuleProfile p{r.lhs, gramcov::beta(r), {}, {}};
    for (const Symbol& s : r.rhs) {
      if (s.is_nonterminal()) p.children.push_back(s.id);
    }
    p.suffix.resize(p.children.size());
    rules_.push_back(std::move(p));
  }
  counts_.resize(g.nonterminal_count());
  for (auto& row : counts_) row.assign(1, BigInt(0));
  for (auto& r : rules_) {
    for (auto& row : r.suffix) row.assign(1, BigInt(0));
  }
  extend_to(max_size, exec);
}

// Fills suffix[j][t] for t = k - beta and returns alpha_r(k). Every value read
// here concerns sizes strictly below k, so rules are independent within one k.
BigInt CountTable::compute_alpha(RuleProfile& r, std::size_t k) {
  const std::size_t m = r.children.size();
  if (m == 0) return k == r.beta ? BigInt(1) : BigInt(0);
  for (auto& row : r.suffix) row.emplace_back(0);
  if (k < r.beta) return 0;
  const std::size_t t = k - r.beta;
  r.suffix[m - 1][t] = counts_[r.children[m - 1]][t];
  for (std::size_t j = m - 1; j-- > 0;) {
    const auto& head = counts_[r.children[j]];
    const auto& tail = r.suffix[j + 1];
    // Each remaining child takes at least one node.
    const std::size_t tail_min = m - 1 - j;
    BigInt acc = 0;
    for (std::size_t i = 1; i + tail_min <= t; ++i) {
      if (head[i].is_zero() || tail[t - i].is_zero()) continue;
      acc += head[i] * tail[t - i];
    }
    r.suffix[j][t] = std::move(acc);
  }
  return r.suffix[0][t];
}

void CountTable::extend_to(std::size_t n, Execution exec) {
  if (n <= max_size_) return;
  std::vector<BigInt> alphas(rules_.size());
  for (std::size_t k = max_size_ + 1; k <= n; ++k) {
    const auto rule_count = static_cast<std::ptrdiff_t>(rules_.size());
    if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic)
      for (std::ptrdiff_t r = 0; r < rule_count; ++r) {
        alphas[r] = compute_alpha(rules_[r], k);
      }
    } else {
      for (std::ptrdiff_t r = 0; r < rule_count; ++r) {
        alphas[r] = compute_alpha(rules_[r], k);
      }
    }
    for (auto& row : counts_) row.emplace_back(0);
    for (std::size_t r = 0; r < rules_.size(); ++r) {
      counts_[rules_[r].lhs][k] += alphas[r];
    }
  }
  max_size_ = n;
}

const BigInt& CountTable::count(SymbolId nonterminal, std::size_t k) const {
  if (k > max_size_) throw std::out_of_range("size beyond count table");
  return counts_.at(nonterminal)[k];
}

const BigInt& CountTable::alpha(RuleId rule, std::size_t k) const {
  if (k > max_size_) throw std::out_of_range("size beyond count table");
  const RuleProfile& r = rules_.at(rule);
  if (k < r.beta) return zero();
  if (r.children.empty()) return k == r.beta ? one() : zero();
  return r.suffix[0][k - r.beta];
}

const BigInt& CountTable::suffix(RuleId rule, std::size_t position,
                                 std::size_t budget) const {
  const RuleProfile& r = rules_.at(rule);
  if (budget + r.beta > max_size_) {
    throw std::out_of_range("budget beyond count table");
  }
  return r.suffix.at(position)[budget];
}

BigInt count_trees(const Grammar& g, std::size_t n) {
  CountTable table(g, n);
  return table.count(g.start(), n);
}

}  // namespace gramcov
