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

#ifndef GRAMCOV_NUMERIC_HPP_
#define GRAMCOV_NUMERIC_HPP_

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace gramcov {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// "a/b" in lowest terms, or "a" when the denominator is 1.
std::string to_fraction_string(const Rational& r);

// Parses "a" or "a/b"; anything else throws std::invalid_argument.
Rational parse_fraction(const std::string& text);

double to_double(const Rational& r);

// Selects between the serial reference kernels and their OpenMP versions.
enum class Execution { kSerial, kParallel };

}  // namespace gramcov

#endif  // GRAMCOV_NUMERIC_HPP_
