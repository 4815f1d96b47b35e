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

#ifndef GRAMCOV_GRAMMAR_HPP_
#define GRAMCOV_GRAMMAR_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gramcov {

using SymbolId = std::uint32_t;
using RuleId = std::uint32_t;

enum class SymbolKind : std::uint8_t { kTerminal, kNonterminal };

// A grammar symbol; `id` indexes the grammar's terminal or non-terminal table.
struct Symbol {
  SymbolKind kind;
  SymbolId id;

  static constexpr Symbol terminal(SymbolId id) {
    return {SymbolKind::kTerminal, id};
  }
  static constexpr Symbol nonterminal(SymbolId id) {
    return {SymbolKind::kNonterminal, id};
  }
  constexpr bool is_terminal() const { return kind == SymbolKind::kTerminal; }
  constexpr bool is_nonterminal() const {
    return kind == SymbolKind::kNonterminal;
  }

  friend constexpr auto operator<=>(const Symbol&, const Symbol&) = default;
};

// lhs -> rhs. An empty rhs is an epsilon rule.
struct Rule {
  SymbolId lhs;
  std::vector<Symbol> rhs;

  friend bool operator==(const Rule&, const Rule&) = default;
};

class GrammarError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public GrammarError {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Immutable context-free grammar (terminals, non-terminals, start, rules).
//
// Rule order is significant: it fixes the order in which rules are
// considered by the counting tables and the sampler, so a given seed always
// reproduces the same tree.
class Grammar {
 public:
  // Throws GrammarError if a rule refers to an out-of-range symbol, the start
  // symbol is out of range, names are duplicated, or a terminal and a
  // non-terminal share a name.
  Grammar(std::vector<std::string> terminals,
          std::vector<std::string> nonterminals, SymbolId start,
          std::vector<Rule> rules);

  std::span<const std::string> terminals() const { return terminals_; }
  std::span<const std::string> nonterminals() const { return nonterminals_; }
  std::size_t terminal_count() const { return terminals_.size(); }
  std::size_t nonterminal_count() const { return nonterminals_.size(); }
  SymbolId start() const { return start_; }
  std::span<const Rule> rules() const { return rules_; }
  const Rule& rule(RuleId id) const { return rules_[id]; }

  // Rule ids with the given lhs, in grammar order.
  std::span<const RuleId> rules_for(SymbolId nonterminal) const {
    return rules_by_lhs_[nonterminal];
  }

  const std::string& name(Symbol s) const {
    return s.is_terminal() ? terminals_[s.id] : nonterminals_[s.id];
  }
  std::optional<SymbolId> find_nonterminal(std::string_view name) const;
  std::optional<SymbolId> find_terminal(std::string_view name) const;

  // Same as find_nonterminal but throws GrammarError naming the symbol.
  SymbolId nonterminal_id(std::string_view name) const;

  friend bool operator==(const Grammar& a, const Grammar& b) {
    return a.terminals_ == b.terminals_ &&
           a.nonterminals_ == b.nonterminals_ && a.start_ == b.start_ &&
           a.rules_ == b.rules_;
  }

 private:
  std::vector<std::string> terminals_;
  std::vector<std::string> nonterminals_;
  SymbolId start_;
  std::vector<Rule> rules_;
  std::vector<std::vector<RuleId>> rules_by_lhs_;
};

// Parses the textual grammar format:
//
//   # comment
//   %start Expr
//   Expr -> Expr "+" Term | Term ;
//   Term -> "x" | ;            # empty alternative is epsilon
//
// Non-terminals are numbered by first appearance as a lhs, then by first
// appearance in a rhs for symbols that never head a rule. Terminals are
// numbered by first appearance. Throws ParseError (with 1-based line and
// column) on malformed input, a duplicate %start, or a %start symbol that no
// rule mentions.
Grammar parse_grammar(std::string_view text);

Grammar load_grammar_file(const std::string& path);

// Canonical text form: a %start line, then one `Lhs -> rhs ;` line per rule in
// rule order. parse_grammar(format_grammar(g)) == g for parsed grammars.
std::string format_grammar(const Grammar& g);

// Human-readable rendering of one rule, e.g. `S -> "a" S "b"`.
std::string format_rule(const Grammar& g, const Rule& r);

enum class Severity { kError, kWarning };

struct Diagnostic {
  Severity severity;
  std::string message;
};

struct ValidateOptions {
  // Rules whose rhs is exactly one non-terminal. Their weight is still 1, so
  // counting remains well founded; they are reported as warnings unless this
  // is set.
  bool reject_unit_rules = false;
  // Covering grammars for a pair of targets grow roughly as 4^l where l is the
  // maximum number of non-terminal occurrences in one rhs.
  std::size_t max_rhs_nonterminals = 8;
};

std::vector<Diagnostic> validate(const Grammar& g,
                                 const ValidateOptions& options = {});

bool has_errors(std::span<const Diagnostic> diagnostics);

// Throws GrammarError listing every ERROR diagnostic, if any.
void require_valid(const Grammar& g, const ValidateOptions& options = {});

// Non-terminals from which at least one finite tree derives.
std::vector<bool> productive_nonterminals(const Grammar& g);

// Non-terminals reachable from the start symbol.
std::vector<bool> reachable_nonterminals(const Grammar& g);

}  // namespace gramcov

#endif  // GRAMCOV_GRAMMAR_HPP_
