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

#include "gramcov/cover.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "gramcov/sampler.hpp"

namespace gramcov {

namespace {

TaggedWord lift(std::span<const Symbol> word, CoverTag tag) {
  TaggedWord out;
  out.reserve(word.size());
  for (const Symbol& s : word) out.push_back({s, tag});
  return out;
}

// Result of tagging every non-terminal of `h` with one more CoverTag.
struct TaggedGrammar {
  Grammar grammar;
  std::vector<SymbolId> base_nonterminal;
  std::vector<CoverTag> tag;
  std::vector<RuleId> base_rule;
};

TaggedGrammar tag_grammar(const Grammar& h, const std::vector<bool>& target) {
  const auto count = static_cast<SymbolId>(h.nonterminal_count());
  auto id_of = [count](SymbolId z, CoverTag t) {
    return static_cast<SymbolId>(static_cast<SymbolId>(t) * count + z);
  };

  std::vector<std::string> names;
  std::vector<SymbolId> base;
  std::vector<CoverTag> tags;
  for (CoverTag t : {CoverTag::kAbove, CoverTag::kBelow, CoverTag::kAbsent}) {
    for (SymbolId z = 0; z < count; ++z) {
      names.push_back("(" + h.nonterminals()[z] + "," +
                      std::to_string(static_cast<int>(t)) + ")");
      base.push_back(z);
      tags.push_back(t);
    }
  }

  std::vector<Rule> rules;
  std::vector<RuleId> base_rule;
  auto emit = [&](SymbolId lhs, CoverTag lhs_tag, const TaggedWord& body,
                  RuleId origin) {
    Rule r{id_of(lhs, lhs_tag), {}};
    r.rhs.reserve(body.size());
    for (const TaggedSymbol& ts : body) {
      r.rhs.push_back(ts.symbol.is_terminal()
                          ? ts.symbol
                          : Symbol::nonterminal(id_of(ts.symbol.id, ts.tag)));
    }
    rules.push_back(std::move(r));
    base_rule.push_back(origin);
  };

  const auto& src = h.rules();
  for (RuleId i = 0; i < src.size(); ++i) {
    emit(src[i].lhs, CoverTag::kAbove, lift_zero(src[i].rhs), i);
  }
  for (RuleId i = 0; i < src.size(); ++i) {
    if (target[src[i].lhs]) continue;
    for (const TaggedWord& w : expand_one_two(src[i].rhs)) {
      emit(src[i].lhs, CoverTag::kBelow, w, i);
    }
  }
  for (RuleId i = 0; i < src.size(); ++i) {
    if (!target[src[i].lhs]) continue;
    emit(src[i].lhs, CoverTag::kBelow, lift_zero(src[i].rhs), i);
  }
  for (RuleId i = 0; i < src.size(); ++i) {
    if (target[src[i].lhs]) continue;
    emit(src[i].lhs, CoverTag::kAbsent, lift_two(src[i].rhs), i);
  }

  const SymbolId start = id_of(h.start(), CoverTag::kBelow);
  std::vector<std::string> terminals(h.terminals().begin(),
                                     h.terminals().end());
  return {Grammar(std::move(terminals), std::move(names), start,
                  std::move(rules)),
          std::move(base), std::move(tags), std::move(base_rule)};
}

void check_nonterminal(const Grammar& g, SymbolId x) {
  if (x >= g.nonterminal_count()) {
    throw GrammarError("covering target out of range");
  }
}

}  // namespace

TaggedWord lift_zero(std::span<const Symbol> word) {
  return lift(word, CoverTag::kAbove);
}

TaggedWord lift_two(std::span<const Symbol> word) {
  return lift(word, CoverTag::kAbsent);
}

std::vector<TaggedWord> expand_one_two(std::span<const Symbol> word) {
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i].is_nonterminal()) positions.push_back(i);
  }
  std::vector<TaggedWord> out;
  if (positions.empty()) return out;
  if (positions.size() >= 63) {
    throw GrammarError("too many non-terminals in one right-hand side");
  }
  const std::uint64_t all_absent = (std::uint64_t{1} << positions.size()) - 1;
  out.reserve(all_absent);
  for (std::uint64_t mask = 0; mask < all_absent; ++mask) {
    TaggedWord w = lift(word, CoverTag::kBelow);
    for (std::size_t j = 0; j < positions.size(); ++j) {
      if (mask >> j & 1) w[positions[j]].tag = CoverTag::kAbsent;
    }
    out.push_back(std::move(w));
  }
  return out;
}

CoverGrammar build_gx(const Grammar& g, SymbolId x) {
  check_nonterminal(g, x);
  std::vector<bool> target(g.nonterminal_count(), false);
  target[x] = true;
  TaggedGrammar t = tag_grammar(g, target);
  CoverGrammar out(std::move(t.grammar), g);
  out.targets_ = {x};
  out.nonterminal_map_ = std::move(t.base_nonterminal);
  out.rule_map_ = std::move(t.base_rule);
  out.tags_ = std::move(t.tag);
  return out;
}

CoverGrammar build_gxy(const Grammar& g, SymbolId x, SymbolId y) {
  check_nonterminal(g, y);
  if (x == y) throw GrammarError("build_gxy requires two distinct targets");
  const CoverGrammar first = build_gx(g, x);
  const Grammar& gx = first.derived();
  std::vector<bool> target(gx.nonterminal_count(), false);
  for (SymbolId z = 0; z < gx.nonterminal_count(); ++z) {
    target[z] = first.origin_nonterminal(z) == y;
  }
  TaggedGrammar t = tag_grammar(gx, target);
  CoverGrammar out(std::move(t.grammar), g);
  out.targets_ = {x, y};
  const std::size_t count = out.derived_.nonterminal_count();
  out.nonterminal_map_.resize(count);
  out.tags_.reserve(2 * count);
  for (SymbolId z = 0; z < count; ++z) {
    const SymbolId inner = t.base_nonterminal[z];
    out.nonterminal_map_[z] = first.origin_nonterminal(inner);
    out.tags_.push_back(first.tags(inner)[0]);
    out.tags_.push_back(t.tag[z]);
  }
  out.rule_map_.reserve(t.base_rule.size());
  for (RuleId r : t.base_rule) out.rule_map_.push_back(first.origin_rule(r));
  return out;
}

DerivationTree project(const CoverGrammar& cover, const DerivationTree& t) {
  std::vector<TreeNode> nodes(t.nodes().begin(), t.nodes().end());
  for (TreeNode& n : nodes) {
    if (n.kind != NodeKind::kNonterminal) continue;
    n.symbol = cover.origin_nonterminal(n.symbol);
    if (n.rule != kNoRule) n.rule = cover.origin_rule(n.rule);
  }
  return DerivationTree(std::move(nodes));
}

CoverageTables::CoverageTables(Grammar g, Execution exec)
    : grammar_(std::move(g)), exec_(exec) {
  require_valid(grammar_);
}

const CountTable& CoverageTables::grow(std::unique_ptr<CountTable>& table,
                                       const Grammar& g, std::size_t n) {
  if (!table) {
    table = std::make_unique<CountTable>(g, std::max<std::size_t>(n, 1), exec_);
  } else {
    table->extend_to(n, exec_);
  }
  return *table;
}

void CoverageTables::prepare(std::size_t n,
                             std::span<const SymbolId> targets) {
  base_table(n);
  for (SymbolId x : targets) cover_table(x, n);
}

const CountTable& CoverageTables::base_table(std::size_t n) {
  std::lock_guard lock(mutex_);
  return grow(base_, grammar_, n);
}

const CoverGrammar& CoverageTables::cover(SymbolId x) {
  std::lock_guard lock(mutex_);
  Entry& e = singles_[x];
  if (!e.cover) e.cover = std::make_unique<CoverGrammar>(build_gx(grammar_, x));
  return *e.cover;
}

const CountTable& CoverageTables::cover_table(SymbolId x, std::size_t n) {
  const CoverGrammar& c = cover(x);
  std::lock_guard lock(mutex_);
  return grow(singles_[x].table, c.derived(), n);
}

const CoverGrammar& CoverageTables::pair_cover(SymbolId x, SymbolId y) {
  std::lock_guard lock(mutex_);
  Entry& e = pairs_[{x, y}];
  if (!e.cover) {
    e.cover = std::make_unique<CoverGrammar>(build_gxy(grammar_, x, y));
  }
  return *e.cover;
}

const CountTable& CoverageTables::pair_cover_table(SymbolId x, SymbolId y,
                                                   std::size_t n) {
  const CoverGrammar& c = pair_cover(x, y);
  std::lock_guard lock(mutex_);
  return grow(pairs_[{x, y}].table, c.derived(), n);
}

BigInt CoverageTables::total(std::size_t n) {
  if (n == 0) return 0;
  return base_table(n).count(grammar_.start(), n);
}

BigInt CoverageTables::covering_count(SymbolId x, std::size_t n) {
  if (n == 0) return 0;
  const CountTable& t = cover_table(x, n);
  return t.count(cover(x).derived().start(), n);
}

BigInt CoverageTables::pair_covering_count(SymbolId x, SymbolId y,
                                           std::size_t n) {
  if (x == y) return covering_count(x, n);
  if (n == 0) return 0;
  if (y < x) std::swap(x, y);
  const CountTable& t = pair_cover_table(x, y, n);
  return t.count(pair_cover(x, y).derived().start(), n);
}

Rational coverage_probability(CoverageTables& tables, SymbolId x,
                              std::size_t n) {
  const BigInt total = tables.total(n);
  if (total.is_zero()) return 0;
  return Rational(tables.covering_count(x, n), total);
}

Rational pair_coverage_probability(CoverageTables& tables, SymbolId x,
                                   SymbolId y, std::size_t n) {
  const BigInt total = tables.total(n);
  if (total.is_zero()) return 0;
  return Rational(tables.pair_covering_count(x, y, n), total);
}

BigInt pair_covering_count(const Grammar& g, SymbolId x, SymbolId y,
                           std::size_t n, Execution exec) {
  if (n == 0) return 0;
  const CoverGrammar c = x == y ? build_gx(g, x) : build_gxy(g, x, y);
  const CountTable table(c.derived(), n, exec);
  return table.count(c.derived().start(), n);
}

DerivationTree sample_covering_tree(CoverageTables& tables, SymbolId x,
                                    std::size_t n, RandomSource& rng) {
  const CountTable& table = tables.cover_table(x, n);
  const CoverGrammar& c = tables.cover(x);
  return project(c, sample_tree(c.derived(), table, c.derived().start(), n,
                                rng));
}

DerivationTree sample_covering_tree(CoverageTables& tables, SymbolId x,
                                    SymbolId y, std::size_t n,
                                    RandomSource& rng) {
  if (x == y) return sample_covering_tree(tables, x, n, rng);
  const CountTable& table = tables.pair_cover_table(x, y, n);
  const CoverGrammar& c = tables.pair_cover(x, y);
  return project(c, sample_tree(c.derived(), table, c.derived().start(), n,
                                rng));
}

}  // namespace gramcov
