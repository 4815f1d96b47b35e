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

#ifndef GRAMCOV_CLI_HPP_
#define GRAMCOV_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace gramcov {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;  // usage, parse or validation error
inline constexpr int kExitEmpty = 2;    // no tree of the requested size

// Runs the command line `args` (without the program name). The JSON output
// document goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

// 64-bit FNV-1a of the canonical grammar text, as 16 hex digits.
std::string grammar_digest(const std::string& canonical_text);

}  // namespace gramcov

#endif  // GRAMCOV_CLI_HPP_
