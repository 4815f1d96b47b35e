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

#ifndef GRAMCOV_RANDOM_HPP_
#define GRAMCOV_RANDOM_HPP_

#include <cstdint>
#include <random>

#include "gramcov/numeric.hpp"

namespace gramcov {

// Seedable, portable source of randomness.
//
// Wraps std::mt19937_64, whose output sequence is fixed by the C++ standard,
// and derives every draw from its raw 64-bit words with rejection sampling.
// No std:: distribution is used, so identical seeds give identical trees on
// every conforming platform.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  // Independent stream `stream` of a campaign seeded with `seed`. The engine
  // seed is splitmix64(seed ^ splitmix64(stream)).
  static RandomSource stream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, bound). bound must be > 0.
  std::uint64_t uniform_below(std::uint64_t bound);
  BigInt uniform_below(const BigInt& bound);

  // Uniform double in [0, 1) with 53 random bits.
  double uniform_unit();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace gramcov

#endif  // GRAMCOV_RANDOM_HPP_
