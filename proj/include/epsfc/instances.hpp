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


// Random game generators, empty-core search and the block-diagonal
// extensions that lift a small empty-core instance to any number of agents.

#ifndef EPSFC_INSTANCES_HPP
#define EPSFC_INSTANCES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "epsfc/game.hpp"

namespace epsfc {

/// Each off-diagonal arc present independently with probability p.
SimpleFhg random_fhg(std::size_t n, double p, std::uint64_t seed);

/// Each agent ranks the sizes 1..n by an independent uniform permutation;
/// values are distinct within an agent.
AnonymousGame random_anon(std::size_t n, std::uint64_t seed);

struct SinglePeakedInstance {
  AnonymousGame game;
  SinglePeakedCertificate certificate;
};

/// Single-peaked in the natural ordering: each agent draws a uniform peak and
/// then walks outward, extending left or right at random, assigning strictly
/// decreasing values.
SinglePeakedInstance random_anon_sp(std::size_t n, std::uint64_t seed);

/// Outcome of a randomized empty-core search. `attempts` counts the
/// attempts examined up to and including the hit.
template <typename Instance>
struct SearchResult {
  std::optional<Instance> instance;
  std::size_t attempts = 0;
  std::optional<std::size_t> hit_index;
  std::uint64_t attempt_seed = 0;
};

/// Draws random_anon_sp instances with seeds derived from (seed, attempt)
/// until one has an empty core. The hit with the smallest attempt index
/// wins, so the result does not depend on `jobs`. Requires n <= 10.
SearchResult<SinglePeakedInstance> find_empty_core_sp(std::size_t n, std::size_t max_attempts, std::uint64_t seed,
                                                      std::size_t jobs = 1);

/// Same search over random_fhg(n, p, .). Requires n <= 10.
SearchResult<SimpleFhg> find_empty_core_fhg(std::size_t n, double p, std::size_t max_attempts, std::uint64_t seed,
                                            std::size_t jobs = 1);

/// Base graph on the first base.n agents, a complete digraph on the rest,
/// no arcs between the two groups.
SimpleFhg extend_fhg(const SimpleFhg& base, std::size_t n);

/// Base agents keep their values on sizes 1..base.n and rank larger sizes
/// below all of those, decreasing in size; new agents value size s at s.
/// The base must be single-peaked in the natural ordering.
SinglePeakedInstance extend_anon_sp(const AnonymousGame& base, std::size_t n);

/// Every non-empty subset of the first base_n agents, then the block of the
/// remaining agents (omitted when base_n == n).
std::vector<Coalition> adversarial_family(std::size_t base_n, std::size_t n);

// ---------------------------------------------------------------------------

enum class GeneratorKind { kFhgRandom, kAnonRandom, kAnonSpRandom, kFhgExtend, kAnonSpExtend };

GeneratorKind parse_generator_kind(const std::string& name);
std::string to_string(GeneratorKind kind);

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kFhgRandom;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double p = 0.5;
  /// Extension kinds only.
  std::optional<Game> base;
};

struct GeneratedInstance {
  Game game;
  std::optional<SinglePeakedCertificate> certificate;
};

/// Dispatches on `spec.kind`; throws std::invalid_argument on bad parameters.
GeneratedInstance generate(const GeneratorSpec& spec);

}  // namespace epsfc

#endif  // EPSFC_INSTANCES_HPP
