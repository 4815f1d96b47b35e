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

#include "gramcov/cli.hpp"

#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gramcov/campaign.hpp"
#include "gramcov/counting.hpp"
#include "gramcov/cover.hpp"
#include "gramcov/grammar.hpp"
#include "gramcov/optimizer.hpp"
#include "gramcov/oracle.hpp"
#include "gramcov/sampler.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gramcov {

using Json = nlohmann::ordered_json;

std::string grammar_digest(const std::string& canonical_text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

// Nested lists: [label, child, ...] for non-terminals, the literal text for
// terminals, null for epsilon.
Json tree_json(const Grammar& g, const DerivationTree& t, std::uint32_t i) {
  const TreeNode& n = t.node(i);
  switch (n.kind) {
    case NodeKind::kTerminal:
      return g.terminals()[n.symbol];
    case NodeKind::kEpsilon:
      return nullptr;
    case NodeKind::kNonterminal:
      break;
  }
  Json out = Json::array({g.nonterminals()[n.symbol]});
  for (std::uint32_t c = 0; c < n.child_count; ++c) {
    out.push_back(tree_json(g, t, n.first_child + c));
  }
  return out;
}

Json fraction(const Rational& r) { return to_fraction_string(r); }

struct Common {
  std::string grammar_path;
  std::size_t size = 0;
  int jobs = 1;
  bool strict = false;
};

class Session {
 public:
  Session(const std::vector<std::string>& args, std::ostream& out,
          std::ostream& err)
      : args_(args), out_(out), err_(err) {}

  int run();

 private:
  void load(const Common& c);
  Execution execution(const Common& c) const;
  Json document(const std::string& command, Json parameters, Json results);

  Json count_cmd(const Common& c, const std::string& root);
  Json sample_cmd(const Common& c, std::size_t count, std::uint64_t seed,
                  const std::string& format);
  Json probs_cmd(const Common& c, bool pairs);
  Json optimize_cmd(const Common& c);
  Json campaign_cmd(const Common& c, std::size_t draws,
                    const std::string& strategy, std::uint64_t seed,
                    const std::string& format);
  Json oracle_cmd(const Common& c);

  const std::vector<std::string>& args_;
  std::ostream& out_;
  std::ostream& err_;
  std::optional<Grammar> grammar_;
  Json warnings_ = Json::array();
};

void Session::load(const Common& c) {
  grammar_ = load_grammar_file(c.grammar_path);
  bool failed = false;
  ValidateOptions options;
  options.reject_unit_rules = c.strict;
  for (const Diagnostic& d : validate(*grammar_, options)) {
    if (d.severity == Severity::kError) {
      err_ << "error: " << d.message << "\n";
      failed = true;
    } else {
      warnings_.push_back(d.message);
    }
  }
  if (failed) throw GrammarError("grammar failed validation");
}

Execution Session::execution(const Common& c) const {
#ifdef _OPENMP
  if (c.jobs > 1) {
    omp_set_num_threads(c.jobs);
    return Execution::kParallel;
  }
#endif
  (void)c;
  return Execution::kSerial;
}

Json Session::document(const std::string& command, Json parameters,
                       Json results) {
  Json doc;
  doc["command"] = command;
  doc["argv"] = args_;
  doc["grammar_digest"] = grammar_digest(format_grammar(*grammar_));
  doc["parameters"] = std::move(parameters);
  doc["results"] = std::move(results);
  doc["warnings"] = warnings_;
  return doc;
}

Json Session::count_cmd(const Common& c, const std::string& root_name) {
  const Grammar& g = *grammar_;
  const SymbolId root =
      root_name.empty() ? g.start() : g.nonterminal_id(root_name);
  const CountTable table(g, c.size, execution(c));
  Json rows;
  for (SymbolId x = 0; x < g.nonterminal_count(); ++x) {
    if (!root_name.empty() && x != root) continue;
    Json row = Json::array();
    for (std::size_t k = 1; k <= c.size; ++k) {
      row.push_back(table.count(x, k).str());
    }
    rows[g.nonterminals()[x]] = std::move(row);
  }
  Json results;
  results["root"] = g.nonterminals()[root];
  results["count"] = table.count(root, c.size).str();
  results["table"] = std::move(rows);
  Json params;
  params["size"] = c.size;
  params["root"] = g.nonterminals()[root];
  return document("count", std::move(params), std::move(results));
}

Json Session::sample_cmd(const Common& c, std::size_t count,
                         std::uint64_t seed, const std::string& format) {
  const Grammar& g = *grammar_;
  const CountTable table(g, c.size, execution(c));
  Json items = Json::array();
  for (std::size_t i = 0; i < count; ++i) {
    RandomSource rng = RandomSource::stream(seed, i);
    const DerivationTree t = sample_tree(g, table, g.start(), c.size, rng);
    if (format == "tree") {
      items.push_back(tree_json(g, t, 0));
    } else {
      items.push_back(yield_string(g, t, " "));
    }
  }
  Json params;
  params["size"] = c.size;
  params["count"] = count;
  params["seed"] = seed;
  params["format"] = format;
  Json results;
  results["total"] = table.count(g.start(), c.size).str();
  results[format == "tree" ? "trees" : "yields"] = std::move(items);
  return document("sample", std::move(params), std::move(results));
}

Json Session::probs_cmd(const Common& c, bool pairs) {
  const Grammar& g = *grammar_;
  CoverageTables tables(g, execution(c));
  const BigInt total = tables.total(c.size);
  if (total.is_zero()) throw EmptyLanguageAtSize(c.size);
  Json single;
  for (SymbolId x = 0; x < g.nonterminal_count(); ++x) {
    const Rational p = coverage_probability(tables, x, c.size);
    Json entry;
    entry["count"] = tables.covering_count(x, c.size).str();
    entry["probability"] = fraction(p);
    entry["probability_approx"] = to_double(p);
    single[g.nonterminals()[x]] = std::move(entry);
  }
  Json results;
  results["total"] = total.str();
  results["single"] = std::move(single);
  if (pairs) {
    Json table;
    for (SymbolId x = 0; x < g.nonterminal_count(); ++x) {
      Json row;
      for (SymbolId y = 0; y < g.nonterminal_count(); ++y) {
        const Rational p = pair_coverage_probability(tables, x, y, c.size);
        Json entry;
        entry["count"] = tables.pair_covering_count(x, y, c.size).str();
        entry["probability"] = fraction(p);
        entry["probability_approx"] = to_double(p);
        row[g.nonterminals()[y]] = std::move(entry);
      }
      table[g.nonterminals()[x]] = std::move(row);
    }
    results["pairs"] = std::move(table);
  }
  Json params;
  params["size"] = c.size;
  params["pairs"] = pairs;
  return document("probs", std::move(params), std::move(results));
}

Json Session::optimize_cmd(const Common& c) {
  const Grammar& g = *grammar_;
  const RatioMatrix m = build_ratio_matrix(g, c.size, execution(c));
  const auto sol = solve_maxmin(m.ratio);
  Json criterion = Json::array();
  for (SymbolId x : m.criterion) criterion.push_back(g.nonterminals()[x]);
  Json excluded = Json::array();
  for (const auto& ex : m.excluded) {
    warnings_.push_back(ex.warning);
    Json e;
    e["symbol"] = g.nonterminals()[ex.nonterminal];
    e["first_coverable_size"] =
        ex.first_coverable_size ? Json(*ex.first_coverable_size) : Json();
    excluded.push_back(std::move(e));
  }
  Json pi, pi_approx, singles;
  for (std::size_t e = 0; e < m.criterion.size(); ++e) {
    const std::string& name = g.nonterminals()[m.criterion[e]];
    pi[name] = fraction(sol.pi[e]);
    pi_approx[name] = to_double(sol.pi[e]);
    singles[name] = m.single_counts[e].str();
  }
  Json rows = Json::array();
  for (const auto& row : m.ratio) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(fraction(v));
    rows.push_back(std::move(r));
  }
  Json results;
  results["total"] = m.total.str();
  results["criterion"] = std::move(criterion);
  results["excluded"] = std::move(excluded);
  results["p"] = fraction(sol.p);
  results["p_approx"] = to_double(sol.p);
  results["certificate"] = fraction(sol.certificate);
  results["pi"] = std::move(pi);
  results["pi_approx"] = std::move(pi_approx);
  results["single_counts"] = std::move(singles);
  results["ratio_matrix"] = std::move(rows);
  Json params;
  params["size"] = c.size;
  return document("optimize", std::move(params), std::move(results));
}

Json Session::campaign_cmd(const Common& c, std::size_t draws,
                           const std::string& strategy, std::uint64_t seed,
                           const std::string& format) {
  const Grammar& g = *grammar_;
  CampaignConfig config;
  config.size = c.size;
  config.draws = draws;
  config.strategy =
      strategy == "isotropic" ? Strategy::kIsotropic : Strategy::kOptimized;
  config.seed = seed;
  config.keep_trees = format == "tree";
  const CampaignReport report = run_campaign(g, config, execution(c));
  for (const auto& w : report.warnings) warnings_.push_back(w);

  Json criterion = Json::array();
  Json pi;
  for (std::size_t e = 0; e < report.criterion.size(); ++e) {
    const std::string& name = g.nonterminals()[report.criterion[e]];
    criterion.push_back(name);
    if (!report.pi.empty()) pi[name] = fraction(report.pi[e]);
  }
  Json targets = Json::array();
  for (const auto& t : report.targets) {
    targets.push_back(t ? Json(g.nonterminals()[*t]) : Json());
  }
  Json items = Json::array();
  if (config.keep_trees) {
    for (const auto& t : report.trees) items.push_back(tree_json(g, t, 0));
  } else {
    for (const auto& y : report.yields) items.push_back(y);
  }
  Json covered = Json::array();
  Json hits;
  for (SymbolId x = 0; x < g.nonterminal_count(); ++x) {
    if (report.coverage.covered[x]) covered.push_back(g.nonterminals()[x]);
    hits[g.nonterminals()[x]] = report.coverage.hits[x];
  }
  Json results;
  results["strategy"] = strategy;
  results["criterion"] = std::move(criterion);
  if (!report.pi.empty()) results["pi"] = std::move(pi);
  results["predicted_bound"] = fraction(report.predicted_bound);
  results["predicted_bound_approx"] = to_double(report.predicted_bound);
  results["targets"] = std::move(targets);
  results[config.keep_trees ? "trees" : "yields"] = std::move(items);
  results["covered"] = std::move(covered);
  results["per_symbol_hits"] = std::move(hits);
  results["all_covered"] = report.coverage.all_covered;
  Json params;
  params["size"] = c.size;
  params["draws"] = draws;
  params["strategy"] = strategy;
  params["seed"] = seed;
  params["format"] = format;
  return document("campaign", std::move(params), std::move(results));
}

Json Session::oracle_cmd(const Common& c) {
  const Grammar& g = *grammar_;
  const auto counts = oracle::oracle_counts(g, c.size);
  Json all = Json::array();
  for (std::size_t k = 1; k <= c.size; ++k) all.push_back(counts.all[k].str());
  Json single;
  for (SymbolId x = 0; x < g.nonterminal_count(); ++x) {
    Json row = Json::array();
    for (std::size_t k = 1; k <= c.size; ++k) {
      row.push_back(counts.single[x][k].str());
    }
    single[g.nonterminals()[x]] = std::move(row);
  }
  Json results;
  results["all"] = std::move(all);
  results["single"] = std::move(single);
  Json params;
  params["size"] = c.size;
  return document("oracle", std::move(params), std::move(results));
}

int Session::run() {
  CLI::App app{"Uniform random derivation trees with non-terminal coverage",
               "gramcov"};
  app.require_subcommand(1);

  auto add_common = [](CLI::App* sub, Common& c) {
    sub->add_option("-g,--grammar", c.grammar_path, "Grammar file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("-n,--size", c.size, "Tree size")
        ->required()
        ->check(CLI::PositiveNumber);
    sub->add_option("-j,--jobs", c.jobs, "Worker threads")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--strict", c.strict, "Reject unit rules");
  };

  Common count_c, sample_c, probs_c, optimize_c, campaign_c, oracle_c;
  std::string root;
  auto* count = app.add_subcommand("count", "Count derivation trees by size");
  add_common(count, count_c);
  count->add_option("--root", root, "Root non-terminal (default: start)");

  std::size_t sample_count = 1;
  std::uint64_t sample_seed = 0;
  std::string sample_format = "yield";
  auto* sample = app.add_subcommand("sample", "Uniform random trees");
  add_common(sample, sample_c);
  sample->add_option("--count", sample_count, "Number of trees")
      ->check(CLI::PositiveNumber);
  sample->add_option("--seed", sample_seed, "Random seed");
  sample->add_option("--format", sample_format, "yield or tree")
      ->check(CLI::IsMember({"yield", "tree"}));

  bool with_pairs = false;
  auto* probs = app.add_subcommand("probs", "Exact coverage probabilities");
  add_common(probs, probs_c);
  probs->add_flag("--pairs", with_pairs, "Include pairwise probabilities");

  auto* optimize =
      app.add_subcommand("optimize", "Optimal coverage mixing distribution");
  add_common(optimize, optimize_c);

  std::size_t draws = 1;
  std::string strategy = "optimized";
  std::uint64_t campaign_seed = 0;
  std::string campaign_format = "yield";
  auto* campaign = app.add_subcommand("campaign", "Generate N test data");
  add_common(campaign, campaign_c);
  campaign->add_option("-N,--draws", draws, "Number of generated trees")
      ->required()
      ->check(CLI::PositiveNumber);
  campaign->add_option("--strategy", strategy, "optimized or isotropic")
      ->check(CLI::IsMember({"optimized", "isotropic"}));
  campaign->add_option("--seed", campaign_seed, "Random seed");
  campaign->add_option("--format", campaign_format, "yield or tree")
      ->check(CLI::IsMember({"yield", "tree"}));

  auto* oracle_sub =
      app.add_subcommand("oracle", "Exhaustive counts for small sizes");
  oracle_sub->group("");  // hidden from --help
  add_common(oracle_sub, oracle_c);

  std::vector<std::string> reversed(args_.rbegin(), args_.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out_ << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err_ << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    Json doc;
    if (count->parsed()) {
      load(count_c);
      doc = count_cmd(count_c, root);
    } else if (sample->parsed()) {
      load(sample_c);
      doc = sample_cmd(sample_c, sample_count, sample_seed, sample_format);
    } else if (probs->parsed()) {
      load(probs_c);
      doc = probs_cmd(probs_c, with_pairs);
    } else if (optimize->parsed()) {
      load(optimize_c);
      doc = optimize_cmd(optimize_c);
    } else if (campaign->parsed()) {
      load(campaign_c);
      doc = campaign_cmd(campaign_c, draws, strategy, campaign_seed,
                         campaign_format);
    } else {
      load(oracle_c);
      doc = oracle_cmd(oracle_c);
    }
    out_ << doc.dump(2) << "\n";
    return kExitOk;
  } catch (const SizeUnrealizable& e) {
    err_ << "error: " << e.what() << "\n";
    return kExitEmpty;
  } catch (const EmptyLanguageAtSize& e) {
    err_ << "error: " << e.what() << "\n";
    return kExitEmpty;
  } catch (const std::exception& e) {
    err_ << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  return Session(args, out, err).run();
}

}  // namespace gramcov
