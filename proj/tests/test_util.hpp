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

#ifndef GRAMCOV_TESTS_TEST_UTIL_HPP_
#define GRAMCOV_TESTS_TEST_UTIL_HPP_

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "gramcov/grammar.hpp"
#include "gramcov/random.hpp"
#include "gramcov/tree.hpp"

namespace gramcov::testing {

inline Grammar bundled(const std::string& name) {
  return load_grammar_file(std::string(GRAMCOV_GRAMMAR_DIR) + "/" + name);
}

// Pearson statistic of observed counts against equal expected frequencies.
inline double chi_square_uniform(const std::map<std::string, std::size_t>& hist,
                                 std::size_t categories, std::size_t samples) {
  const double expected =
      static_cast<double>(samples) / static_cast<double>(categories);
  double stat = 0;
  std::size_t seen = 0;
  for (const auto& [key, count] : hist) {
    const double d = static_cast<double>(count) - expected;
    stat += d * d / expected;
    ++seen;
  }
  // Categories never observed contribute their full expectation.
  stat += static_cast<double>(categories - seen) * expected;
  return stat;
}

// Approximate upper 0.001 quantile of the chi-square law (Wilson-Hilferty).
// Within 1% of the tabulated value for df >= 3.
inline double chi_square_critical_001(double df) {
  const double z = 3.0902;
  const double h = 2.0 / (9.0 * df);
  return df * std::pow(1 - h + z * std::sqrt(h), 3);
}

// Finds the rule `lhs -> rhs...` by symbol names; terminals are written with
// surrounding double quotes. Aborts the test binary if missing.
RuleId find_rule(const Grammar& g, const std::string& lhs,
                 const std::vector<std::string>& rhs);

// Small random grammar over terminals "a", "b" with 1-3 non-terminals, for
// property tests. Unit and epsilon rules are allowed.
Grammar random_grammar(RandomSource& rng);

}  // namespace gramcov::testing

#endif  // GRAMCOV_TESTS_TEST_UTIL_HPP_
