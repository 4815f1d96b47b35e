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

#ifndef GRAMCOV_COVER_HPP_
#define GRAMCOV_COVER_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <utility>
#include <vector>

#include "gramcov/counting.hpp"
#include "gramcov/grammar.hpp"
#include "gramcov/numeric.hpp"
#include "gramcov/random.hpp"
#include "gramcov/tree.hpp"

namespace gramcov {

// Position of a target relative to a node of a covering grammar:
//   kAbove   some ancestor is a target,
//   kBelow   no ancestor is, but the node or one of its descendants is,
//   kAbsent  no target above or below.
enum class CoverTag : std::uint8_t { kAbove = 0, kBelow = 1, kAbsent = 2 };

// A rhs symbol with a tag. The tag is meaningful only for non-terminals.
struct TaggedSymbol {
  Symbol symbol;
  CoverTag tag;

  friend bool operator==(const TaggedSymbol&, const TaggedSymbol&) = default;
};

using TaggedWord = std::vector<TaggedSymbol>;

// Every non-terminal gets tag kAbove (resp. kAbsent); terminals are kept.
TaggedWord lift_zero(std::span<const Symbol> word);
TaggedWord lift_two(std::span<const Symbol> word);

// All taggings of the non-terminal occurrences of `word` with kBelow/kAbsent
// in which at least one occurrence is kBelow. Occurrence j is kAbsent in
// tagging number `mask` iff bit j of `mask` is set, and taggings are listed by
// increasing mask. Empty when `word` has no non-terminal.
std::vector<TaggedWord> expand_one_two(std::span<const Symbol> word);

// A grammar whose size-n trees are in bijection with the size-n trees of
// `origin` that cover every target. Built by tagging each non-terminal with
// one CoverTag per target; for two targets the single-target construction is
// applied a second time on top of the first.
//
// Derived non-terminals are named "(Z,t)" (or "((Z,t),u)"). Terminals keep
// the origin's ids, so projection only rewrites non-terminal labels and rule
// ids.
class CoverGrammar {
 public:
  const Grammar& derived() const { return derived_; }
  const Grammar& origin() const { return origin_; }
  std::span<const SymbolId> targets() const { return targets_; }

  // Origin non-terminal that a derived non-terminal tags.
  SymbolId origin_nonterminal(SymbolId derived) const {
    return nonterminal_map_[derived];
  }
  // Origin rule that a derived rule projects onto.
  RuleId origin_rule(RuleId derived) const { return rule_map_[derived]; }
  // Tags of a derived non-terminal, outermost (first target) first.
  std::span<const CoverTag> tags(SymbolId derived) const {
    return std::span<const CoverTag>(tags_).subspan(derived * targets_.size(),
                                                    targets_.size());
  }

 private:
  friend CoverGrammar build_gx(const Grammar& g, SymbolId x);
  friend CoverGrammar build_gxy(const Grammar& g, SymbolId x, SymbolId y);

  CoverGrammar(Grammar derived, Grammar origin)
      : derived_(std::move(derived)), origin_(std::move(origin)) {}

  Grammar derived_;
  Grammar origin_;
  std::vector<SymbolId> targets_;
  std::vector<SymbolId> nonterminal_map_;
  std::vector<RuleId> rule_map_;
  std::vector<CoverTag> tags_;
};

// Rules are emitted family by family: every rule lifted with kAbove, then the
// kBelow expansions for non-target heads, then the target's rules with a kBelow
// head and kAbove body, then rules lifted with kAbsent for non-target heads.
// Within a family, origin rule order is kept. Start symbol is (S0,1).
CoverGrammar build_gx(const Grammar& g, SymbolId x);

// Pair construction over build_gx(g, x) with every (y, t) as second target.
// Start symbol is ((S0,1),1). Requires x != y.
CoverGrammar build_gxy(const Grammar& g, SymbolId x, SymbolId y);

// Erases all tags: a derivation tree of the derived grammar becomes the
// corresponding tree of the origin, with the same shape and size.
DerivationTree project(const CoverGrammar& cover, const DerivationTree& t);

// Lazily built count tables for a grammar and its covering grammars.
//
// Tables grow monotonically when a larger size is requested. The object may be
// shared between threads: lookups and growth are serialised by a mutex, and
// the returned references stay valid (but must not be read while another
// thread grows the same table, so call prepare() before fanning out).
class CoverageTables {
 public:
  explicit CoverageTables(Grammar g, Execution exec = Execution::kSerial);

  const Grammar& grammar() const { return grammar_; }

  // Builds G and every requested G_X table up to size n.
  void prepare(std::size_t n, std::span<const SymbolId> targets);

  const CountTable& base_table(std::size_t n);
  const CoverGrammar& cover(SymbolId x);
  const CountTable& cover_table(SymbolId x, std::size_t n);
  const CoverGrammar& pair_cover(SymbolId x, SymbolId y);
  const CountTable& pair_cover_table(SymbolId x, SymbolId y, std::size_t n);

  // |E_n(G)|, |E_{X,n}(G)| and |E_{X,Y,n}(G)|. The pair count for x == y is
  // the single count; (x, y) and (y, x) share one cached grammar.
  BigInt total(std::size_t n);
  BigInt covering_count(SymbolId x, std::size_t n);
  BigInt pair_covering_count(SymbolId x, SymbolId y, std::size_t n);

 private:
  struct Entry {
    std::unique_ptr<CoverGrammar> cover;
    std::unique_ptr<CountTable> table;
  };

  const CountTable& grow(std::unique_ptr<CountTable>& table,
                         const Grammar& g, std::size_t n);

  Grammar grammar_;
  Execution exec_;
  std::mutex mutex_;
  std::unique_ptr<CountTable> base_;
  std::map<SymbolId, Entry> singles_;
  std::map<std::pair<SymbolId, SymbolId>, Entry> pairs_;
};

// p_{X,n} = |E_{X,n}(G)| / |E_n(G)|, or 0 when no size-n tree exists.
Rational coverage_probability(CoverageTables& tables, SymbolId x,
                              std::size_t n);
Rational pair_coverage_probability(CoverageTables& tables, SymbolId x,
                                   SymbolId y, std::size_t n);

// Uncached pair count, suitable for running one pair per task.
BigInt pair_covering_count(const Grammar& g, SymbolId x, SymbolId y,
                           std::size_t n, Execution exec = Execution::kSerial);

// Uniform over the size-n trees of G covering x (resp. both x and y): samples
// the covering grammar, then projects. Throws SizeUnrealizable when none
// exists.
DerivationTree sample_covering_tree(CoverageTables& tables, SymbolId x,
                                    std::size_t n, RandomSource& rng);
DerivationTree sample_covering_tree(CoverageTables& tables, SymbolId x,
                                    SymbolId y, std::size_t n,
                                    RandomSource& rng);

}  // namespace gramcov

#endif  // GRAMCOV_COVER_HPP_
