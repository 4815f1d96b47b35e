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

#include "gramcov/campaign.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>

#include "gramcov/cover.hpp"
#include "gramcov/random.hpp"
#include "gramcov/sampler.hpp"

namespace gramcov {

CoverageSummary coverage_report(std::span<const DerivationTree> trees,
                                std::span<const SymbolId> criterion,
                                std::size_t nonterminal_count) {
  CoverageSummary out;
  out.covered.assign(nonterminal_count, false);
  out.hits.assign(nonterminal_count, 0);
  for (const DerivationTree& t : trees) {
    const auto seen = covered_nonterminals(t, nonterminal_count);
    for (std::size_t i = 0; i < nonterminal_count; ++i) {
      if (!seen[i]) continue;
      out.covered[i] = true;
      ++out.hits[i];
    }
  }
  out.all_covered =
      !criterion.empty() &&
      std::all_of(criterion.begin(), criterion.end(),
                  [&](SymbolId s) { return out.covered[s]; });
  return out;
}

std::size_t draw_index(std::span<const Rational> weights, RandomSource& rng) {
  BigInt common = 1;
  for (const Rational& w : weights) {
    common = boost::multiprecision::lcm(common,
                                        boost::multiprecision::denominator(w));
  }
  BigInt u = rng.uniform_below(common);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const BigInt scaled = boost::multiprecision::numerator(weights[i]) *
                          (common / boost::multiprecision::denominator(weights[i]));
    if (u < scaled) return i;
    u -= scaled;
  }
  throw std::invalid_argument("draw_index: weights sum to less than 1");
}

CampaignReport run_campaign(const Grammar& g, const CampaignConfig& config,
                            Execution exec) {
  if (config.draws == 0) throw std::invalid_argument("draws must be >= 1");
  CampaignReport report;
  const std::size_t n = config.size;

  // Optimized needs the full ratio matrix; the others only single counts.
  RatioMatrix matrix;
  if (config.strategy == Strategy::kOptimized) {
    matrix = build_ratio_matrix(g, n, exec);
  } else {
    CoverageTables probe(g);
    const BigInt total = probe.total(n);
    if (total.is_zero()) throw EmptyLanguageAtSize(n);
    matrix.total = total;
    for (SymbolId x = 0; x < g.nonterminal_count(); ++x) {
      BigInt c = probe.covering_count(x, n);
      if (c.is_zero()) {
        matrix.excluded.push_back(
            {x, std::nullopt,
             "non-terminal '" + g.nonterminals()[x] +
                 "' is not covered by any tree of size " + std::to_string(n) +
                 "; excluded from the criterion"});
        continue;
      }
      matrix.criterion.push_back(x);
      matrix.single_counts.push_back(std::move(c));
    }
  }
  report.criterion = matrix.criterion;
  for (const auto& ex : matrix.excluded) report.warnings.push_back(ex.warning);
  const std::size_t c = report.criterion.size();

  switch (config.strategy) {
    case Strategy::kOptimized: {
      const auto sol = solve_maxmin(matrix.ratio);
      report.pi = sol.pi;
      report.predicted_bound = sol.certificate;
      break;
    }
    case Strategy::kExplicit: {
      report.pi.assign(c, Rational(0));
      Rational sum = 0;
      for (const auto& [sym, weight] : config.explicit_pi) {
        auto it = std::find(report.criterion.begin(), report.criterion.end(),
                            sym);
        if (it == report.criterion.end()) {
          throw std::invalid_argument(
              "explicit distribution names a symbol outside the criterion");
        }
        if (weight < 0) {
          throw std::invalid_argument("explicit distribution has a negative "
                                      "weight");
        }
        report.pi[it - report.criterion.begin()] += weight;
        sum += weight;
      }
      if (std::abs(to_double(sum - 1)) > 1e-12) {
        throw std::invalid_argument("explicit distribution must sum to 1");
      }
      // Renormalise so that the exact draw is well defined.
      for (auto& w : report.pi) w /= sum;
      CoverageTables tables(g, exec);
      std::vector<std::vector<Rational>> ratio(c, std::vector<Rational>(c));
      for (std::size_t f = 0; f < c; ++f) {
        for (std::size_t e = 0; e < c; ++e) {
          if (report.pi[e] == 0) continue;
          ratio[f][e] = Rational(
              tables.pair_covering_count(report.criterion[e],
                                         report.criterion[f], n),
              matrix.single_counts[e]);
        }
      }
      report.predicted_bound = min_row_value(ratio, report.pi);
      break;
    }
    case Strategy::kIsotropic: {
      Rational p_min = 0;
      for (std::size_t e = 0; e < c; ++e) {
        const Rational p(matrix.single_counts[e], matrix.total);
        if (e == 0 || p < p_min) p_min = p;
      }
      report.predicted_bound = isotropic_coverage_bound(p_min, config.draws);
      break;
    }
  }

  CoverageTables tables(g, exec);
  std::vector<SymbolId> support;
  for (std::size_t e = 0; e < report.pi.size(); ++e) {
    if (report.pi[e] != 0) support.push_back(report.criterion[e]);
  }
  tables.prepare(n, support);

  const std::size_t draws = config.draws;
  std::vector<DerivationTree> trees(draws);
  report.targets.assign(draws, std::nullopt);
  std::vector<std::exception_ptr> failures(draws);
  auto iteration = [&](std::size_t i) {
    try {
      RandomSource rng = RandomSource::stream(config.seed, i);
      if (config.strategy == Strategy::kIsotropic) {
        trees[i] = sample_tree(g, tables.base_table(n), g.start(), n, rng);
        return;
      }
      const SymbolId e = report.criterion[draw_index(report.pi, rng)];
      report.targets[i] = e;
      trees[i] = sample_covering_tree(tables, e, n, rng);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  };
  const auto count = static_cast<std::ptrdiff_t>(draws);
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) iteration(i);
  } else {
    for (std::ptrdiff_t i = 0; i < count; ++i) iteration(i);
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  report.coverage = coverage_report(trees, report.criterion,
                                    g.nonterminal_count());
  report.yields.reserve(draws);
  for (const auto& t : trees) report.yields.push_back(yield_string(g, t, " "));
  if (config.keep_trees) report.trees = std::move(trees);
  return report;
}

}  // namespace gramcov
