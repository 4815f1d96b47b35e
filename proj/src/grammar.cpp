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

#include "gramcov/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace gramcov {

ParseError::ParseError(const std::string& message, std::size_t line,
                       std::size_t column)
    : GrammarError(std::to_string(line) + ":" + std::to_string(column) + ": " +
                   message),
      line_(line),
      column_(column) {}

Grammar::Grammar(std::vector<std::string> terminals,
                 std::vector<std::string> nonterminals, SymbolId start,
                 std::vector<Rule> rules)
    : terminals_(std::move(terminals)),
      nonterminals_(std::move(nonterminals)),
      start_(start),
      rules_(std::move(rules)),
      rules_by_lhs_(nonterminals_.size()) {
  if (start_ >= nonterminals_.size()) {
    throw GrammarError("start symbol out of range");
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& t : terminals_) {
    if (!seen.insert(t).second) {
      throw GrammarError("duplicate terminal \"" + t + "\"");
    }
  }
  for (const auto& nt : nonterminals_) {
    if (!seen.insert(nt).second) {
      throw GrammarError("symbol name '" + nt +
                         "' used for more than one symbol");
    }
  }
  for (RuleId id = 0; id < rules_.size(); ++id) {
    const Rule& r = rules_[id];
    if (r.lhs >= nonterminals_.size()) {
      throw GrammarError("rule lhs out of range");
    }
    for (const Symbol& s : r.rhs) {
      const std::size_t bound =
          s.is_terminal() ? terminals_.size() : nonterminals_.size();
      if (s.id >= bound) throw GrammarError("rule rhs symbol out of range");
    }
    rules_by_lhs_[r.lhs].push_back(id);
  }
}

std::optional<SymbolId> Grammar::find_nonterminal(std::string_view name) const {
  auto it = std::find(nonterminals_.begin(), nonterminals_.end(), name);
  if (it == nonterminals_.end()) return std::nullopt;
  return static_cast<SymbolId>(it - nonterminals_.begin());
}

std::optional<SymbolId> Grammar::find_terminal(std::string_view name) const {
  auto it = std::find(terminals_.begin(), terminals_.end(), name);
  if (it == terminals_.end()) return std::nullopt;
  return static_cast<SymbolId>(it - terminals_.begin());
}

SymbolId Grammar::nonterminal_id(std::string_view name) const {
  if (auto id = find_nonterminal(name)) return *id;
  throw GrammarError("unknown non-terminal '" + std::string(name) + "'");
}

namespace {

enum class TokenKind { kIdent, kString, kArrow, kBar, kSemi, kStart, kEnd };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      if (pos_ >= text_.size()) {
        out.push_back({TokenKind::kEnd, "", line_, col_});
        return out;
      }
      const std::size_t line = line_, col = col_;
      const char c = text_[pos_];
      if (c == '-' && peek(1) == '>') {
        advance(2);
        out.push_back({TokenKind::kArrow, "->", line, col});
      } else if (c == '|') {
        advance(1);
        out.push_back({TokenKind::kBar, "|", line, col});
      } else if (c == ';') {
        advance(1);
        out.push_back({TokenKind::kSemi, ";", line, col});
      } else if (c == '"') {
        out.push_back({TokenKind::kString, read_string(), line, col});
      } else if (c == '%') {
        advance(1);
        std::string word = read_ident_chars();
        if (word != "start") {
          throw ParseError("unknown directive '%" + word + "'", line, col);
        }
        out.push_back({TokenKind::kStart, "%start", line, col});
      } else if (is_ident_start(c)) {
        out.push_back({TokenKind::kIdent, read_ident_chars(), line, col});
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", line,
                         col);
      }
    }
  }

 private:
  static bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  char peek(std::size_t ahead) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
      } else {
        break;
      }
    }
  }

  std::string read_ident_chars() {
    std::string out;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) {
      out.push_back(text_[pos_]);
      advance(1);
    }
    return out;
  }

  std::string read_string() {
    const std::size_t line = line_, col = col_;
    advance(1);
    std::string out;
    for (;;) {
      if (pos_ >= text_.size() || text_[pos_] == '\n') {
        throw ParseError("unterminated string literal", line, col);
      }
      const char c = text_[pos_];
      if (c == '"') {
        advance(1);
        break;
      }
      if (c == '\\') {
        const char next = peek(1);
        if (next != '"' && next != '\\') {
          throw ParseError("invalid escape in string literal", line_, col_);
        }
        out.push_back(next);
        advance(2);
        continue;
      }
      out.push_back(c);
      advance(1);
    }
    if (out.empty()) {
      throw ParseError("empty terminal literal; use an empty alternative for "
                       "epsilon",
                       line, col);
    }
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

// Rhs item before symbol resolution.
struct RawSymbol {
  bool terminal;
  std::string text;
  std::size_t line;
  std::size_t column;
};

struct RawRule {
  std::string lhs;
  std::vector<RawSymbol> rhs;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Grammar run() {
    while (cur().kind != TokenKind::kEnd) {
      if (cur().kind == TokenKind::kStart) {
        parse_start();
      } else {
        parse_rule_group();
      }
    }
    return resolve();
  }

 private:
  const Token& cur() const { return tokens_[pos_]; }

  const Token& expect(TokenKind kind, const char* what) {
    if (cur().kind != kind) {
      throw ParseError(std::string("expected ") + what + ", found '" +
                           describe(cur()) + "'",
                       cur().line, cur().column);
    }
    return tokens_[pos_++];
  }

  static std::string describe(const Token& t) {
    return t.kind == TokenKind::kEnd ? "end of input" : t.text;
  }

  void parse_start() {
    const Token& directive = tokens_[pos_++];
    if (start_) {
      throw ParseError("duplicate %start directive", directive.line,
                       directive.column);
    }
    const Token& name = expect(TokenKind::kIdent, "non-terminal after %start");
    start_ = name;
  }

  void parse_rule_group() {
    const Token& lhs = expect(TokenKind::kIdent, "rule left-hand side");
    expect(TokenKind::kArrow, "'->'");
    for (;;) {
      RawRule rule{lhs.text, {}};
      while (cur().kind == TokenKind::kIdent ||
             cur().kind == TokenKind::kString) {
        const Token& t = tokens_[pos_++];
        rule.rhs.push_back(
            {t.kind == TokenKind::kString, t.text, t.line, t.column});
      }
      rules_.push_back(std::move(rule));
      if (cur().kind == TokenKind::kBar) {
        ++pos_;
        continue;
      }
      expect(TokenKind::kSemi, "'|' or ';'");
      return;
    }
  }

  Grammar resolve() {
    if (rules_.empty() && !start_) {
      throw ParseError("grammar has no rules", 1, 1);
    }
    std::vector<std::string> nonterminals;
    std::unordered_map<std::string, SymbolId> nt_ids;
    auto intern_nt = [&](const std::string& name) {
      auto [it, inserted] =
          nt_ids.emplace(name, static_cast<SymbolId>(nonterminals.size()));
      if (inserted) nonterminals.push_back(name);
      return it->second;
    };
    for (const auto& r : rules_) intern_nt(r.lhs);
    for (const auto& r : rules_) {
      for (const auto& s : r.rhs) {
        if (!s.terminal) intern_nt(s.text);
      }
    }

    std::vector<std::string> terminals;
    std::unordered_map<std::string, SymbolId> t_ids;
    std::vector<Rule> rules;
    rules.reserve(rules_.size());
    for (const auto& raw : rules_) {
      Rule rule{nt_ids.at(raw.lhs), {}};
      for (const auto& s : raw.rhs) {
        if (!s.terminal) {
          rule.rhs.push_back(Symbol::nonterminal(nt_ids.at(s.text)));
          continue;
        }
        if (nt_ids.count(s.text)) {
          throw ParseError("terminal \"" + s.text +
                               "\" clashes with a non-terminal of the same "
                               "name",
                           s.line, s.column);
        }
        auto [it, inserted] =
            t_ids.emplace(s.text, static_cast<SymbolId>(terminals.size()));
        if (inserted) terminals.push_back(s.text);
        rule.rhs.push_back(Symbol::terminal(it->second));
      }
      rules.push_back(std::move(rule));
    }

    SymbolId start = 0;
    if (start_) {
      auto it = nt_ids.find(start_->text);
      if (it == nt_ids.end()) {
        throw ParseError("undeclared start symbol '" + start_->text + "'",
                         start_->line, start_->column);
      }
      start = it->second;
    }
    return Grammar(std::move(terminals), std::move(nonterminals), start,
                   std::move(rules));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::optional<Token> start_;
  std::vector<RawRule> rules_;
};

std::string quote(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

Grammar parse_grammar(std::string_view text) {
  return Parser(Lexer(text).run()).run();
}

Grammar load_grammar_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GrammarError("cannot open grammar file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_grammar(buf.str());
}

std::string format_rule(const Grammar& g, const Rule& r) {
  std::string out = g.nonterminals()[r.lhs] + " ->";
  for (const Symbol& s : r.rhs) {
    out += ' ';
    out += s.is_terminal() ? quote(g.name(s)) : g.name(s);
  }
  return out;
}

std::string format_grammar(const Grammar& g) {
  std::string out = "%start " + g.nonterminals()[g.start()] + "\n";
  for (const Rule& r : g.rules()) {
    out += format_rule(g, r);
    out += " ;\n";
  }
  return out;
}

std::vector<bool> productive_nonterminals(const Grammar& g) {
  std::vector<bool> productive(g.nonterminal_count(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Rule& r : g.rules()) {
      if (productive[r.lhs]) continue;
      const bool all = std::all_of(r.rhs.begin(), r.rhs.end(), [&](Symbol s) {
        return s.is_terminal() || productive[s.id];
      });
      if (all) {
        productive[r.lhs] = true;
        changed = true;
      }
    }
  }
  return productive;
}

std::vector<bool> reachable_nonterminals(const Grammar& g) {
  std::vector<bool> reached(g.nonterminal_count(), false);
  std::vector<SymbolId> stack{g.start()};
  reached[g.start()] = true;
  while (!stack.empty()) {
    const SymbolId nt = stack.back();
    stack.pop_back();
    for (RuleId id : g.rules_for(nt)) {
      for (const Symbol& s : g.rule(id).rhs) {
        if (s.is_nonterminal() && !reached[s.id]) {
          reached[s.id] = true;
          stack.push_back(s.id);
        }
      }
    }
  }
  return reached;
}

std::vector<Diagnostic> validate(const Grammar& g,
                                 const ValidateOptions& options) {
  std::vector<Diagnostic> out;
  std::size_t widest = 0;
  for (const Rule& r : g.rules()) {
    const auto nts = static_cast<std::size_t>(std::count_if(
        r.rhs.begin(), r.rhs.end(), [](Symbol s) { return s.is_nonterminal(); }));
    widest = std::max(widest, nts);
    if (r.rhs.size() == 1 && r.rhs[0].is_nonterminal()) {
      out.push_back({options.reject_unit_rules ? Severity::kError
                                               : Severity::kWarning,
                     "unit rule '" + format_rule(g, r) +
                         "': right-hand side is a single non-terminal"});
    }
  }
  const auto productive = productive_nonterminals(g);
  const auto reachable = reachable_nonterminals(g);
  for (SymbolId nt = 0; nt < g.nonterminal_count(); ++nt) {
    const std::string& name = g.nonterminals()[nt];
    if (!reachable[nt]) {
      out.push_back({Severity::kWarning, "non-terminal '" + name +
                                             "' is unreachable from '" +
                                             g.nonterminals()[g.start()] +
                                             "'"});
    }
    if (!productive[nt]) {
      out.push_back({Severity::kWarning,
                     "non-terminal '" + name + "' derives no finite tree"});
    }
  }
  if (widest > options.max_rhs_nonterminals) {
    out.push_back({Severity::kWarning,
                   "a right-hand side has " + std::to_string(widest) +
                       " non-terminal occurrences (bound " +
                       std::to_string(options.max_rhs_nonterminals) +
                       "); pair-covering grammars grow as 4^" +
                       std::to_string(widest)});
  }
  return out;
}

bool has_errors(std::span<const Diagnostic> diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) {
                       return d.severity == Severity::kError;
                     });
}

void require_valid(const Grammar& g, const ValidateOptions& options) {
  std::string message;
  for (const Diagnostic& d : validate(g, options)) {
    if (d.severity != Severity::kError) continue;
    if (!message.empty()) message += "; ";
    message += d.message;
  }
  if (!message.empty()) throw GrammarError("invalid grammar: " + message);
}

}  // namespace gramcov
