// Copyright 2026 The epsfc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EPSFC_RANDOM_HPP
#define EPSFC_RANDOM_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace epsfc {

/// The engine used everywhere. Its output sequence is fixed by the standard,
/// so the helpers below (which avoid std::*_distribution) make every seeded
/// computation reproducible across standard libraries.
using Rng = std::mt19937_64;
__extension__ using U128 = unsigned __int128;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stable sub-seed for (root, tag, index): FNV-1a over the tag, mixed.
inline std::uint64_t derive_seed(std::uint64_t root, std::string_view tag, std::uint64_t index) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(splitmix64(root ^ h) + index);
}

/// Uniform integer in [0, bound). bound must be > 0.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  // Rejection on the top of the range keeps the draw exactly uniform.
  const std::uint64_t limit = bound == 0 ? 0 : (~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound);
  std::uint64_t x;
  do {
    x = rng();
  } while (x > limit);
  return x % bound;
}

/// Uniform 128-bit integer in [0, bound).
inline U128 uniform_below_u128(Rng& rng, U128 bound) {
  if (bound <= ~std::uint64_t{0}) return uniform_below(rng, static_cast<std::uint64_t>(bound));
  const U128 max = ~static_cast<U128>(0);
  const U128 limit = max - (max % bound + 1) % bound;
  U128 x;
  do {
    x = (static_cast<U128>(rng()) << 64) | rng();
  } while (x > limit);
  return x % bound;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace epsfc

#endif  // EPSFC_RANDOM_HPP
