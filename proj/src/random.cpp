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

#include "gramcov/random.hpp"

#include <limits>
#include <stdexcept>

namespace gramcov {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomSource RandomSource::stream(std::uint64_t seed, std::uint64_t stream) {
  return RandomSource(splitmix64(seed ^ splitmix64(stream)));
}

std::uint64_t RandomSource::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound is 0");
  if ((bound & (bound - 1)) == 0) return next_u64() & (bound - 1);
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t x = next_u64();
    if (x >= limit) return x % bound;
  }
}

BigInt RandomSource::uniform_below(const BigInt& bound) {
  if (bound <= 0) throw std::invalid_argument("uniform_below: bound <= 0");
  if (bound <= std::numeric_limits<std::uint64_t>::max()) {
    return BigInt(uniform_below(bound.convert_to<std::uint64_t>()));
  }
  // Draw msb(bound - 1) + 1 bits, least significant word first, and retry
  // until the value falls below the bound.
  const BigInt top = bound - 1;
  const std::size_t bits = boost::multiprecision::msb(top) + 1;
  const std::size_t words = (bits + 63) / 64;
  const std::size_t spare = words * 64 - bits;
  for (;;) {
    BigInt x = 0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t word = next_u64();
      if (w + 1 == words && spare != 0) word >>= spare;
      x |= BigInt(word) << (64 * w);
    }
    if (x < bound) return x;
  }
}

double RandomSource::uniform_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace gramcov
