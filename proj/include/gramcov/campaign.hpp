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

#ifndef GRAMCOV_CAMPAIGN_HPP_
#define GRAMCOV_CAMPAIGN_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gramcov/grammar.hpp"
#include "gramcov/numeric.hpp"
#include "gramcov/optimizer.hpp"
#include "gramcov/random.hpp"
#include "gramcov/tree.hpp"

namespace gramcov {

enum class Strategy {
  kOptimized,  // pi from the max-min program
  kIsotropic,  // plain uniform generation from the start symbol
  kExplicit,   // caller-supplied pi
};

struct CampaignConfig {
  std::size_t size = 0;   // n: size of every generated tree
  std::size_t draws = 1;  // N: number of generated trees
  Strategy strategy = Strategy::kOptimized;
  // Only for kExplicit. Must sum to 1 (within 1e-12) over coverable symbols.
  std::vector<std::pair<SymbolId, Rational>> explicit_pi;
  std::uint64_t seed = 0;
  // When false only yields are kept.
  bool keep_trees = true;
};

struct CoverageSummary {
  std::vector<bool> covered;        // per non-terminal
  std::vector<std::size_t> hits;    // trees covering each non-terminal
  bool all_covered = false;         // covered includes the whole criterion
};

struct CampaignReport {
  std::vector<SymbolId> criterion;
  std::vector<Rational> pi;                  // per criterion element
  std::vector<std::optional<SymbolId>> targets;  // drawn per iteration
  std::vector<DerivationTree> trees;
  std::vector<std::string> yields;
  CoverageSummary coverage;
  // Isotropic: 1 - (1 - p_min)^N. Otherwise the one-draw guarantee
  // min_f sum_e pi_e ratio[f][e].
  Rational predicted_bound;
  std::vector<std::string> warnings;
};

// Hit counts and union coverage of `trees` against `criterion`.
CoverageSummary coverage_report(std::span<const DerivationTree> trees,
                                std::span<const SymbolId> criterion,
                                std::size_t nonterminal_count);

// Repeats `draws` times: pick e with probability pi_e, then a uniform size-n
// tree covering e (or, for kIsotropic, a uniform size-n tree). Iteration i
// uses RandomSource::stream(seed, i), so the report does not depend on the
// execution mode or the thread count.
CampaignReport run_campaign(const Grammar& g, const CampaignConfig& config,
                            Execution exec = Execution::kSerial);

// Index drawn with probability weights[i] (exact rationals summing to 1): one
// uniform integer below the common denominator compared against running
// numerators.
std::size_t draw_index(std::span<const Rational> weights, RandomSource& rng);

}  // namespace gramcov

#endif  // GRAMCOV_CAMPAIGN_HPP_
