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

// Constructive algorithms that return partitions blocked by only a small
// mass of coalitions.

#ifndef EPSFC_STABILIZERS_HPP
#define EPSFC_STABILIZERS_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "epsfc/distributions.hpp"
#include "epsfc/game.hpp"

namespace epsfc {

// ---------------------------------------------------------------------------
// Simple fractional games

/// Integer thresholds driving the simple fractional stabilizer.
struct FhgThresholds {
  /// Agents with out-degree <= degree_cut count as low-degree.
  std::size_t degree_cut = 0;
  /// Size of the candidate set H; the matching branch runs iff the number of
  /// low-degree agents is at least this.
  std::size_t candidates = 1;
  /// Number of loop iterations (target size of Gr).
  std::size_t budget = 1;
};

/// Asymptotic constants clamped for small n:
/// degree_cut = floor(n - 31 n^(2/3)) in [0, n-1], candidates =
/// max(1, floor(n^(1/3)/62)), budget = max(1, floor(n^(1/3)/124)).
FhgThresholds default_fhg_thresholds(std::size_t n);

enum class FhgBranch { kMatching, kClique };

struct FhgIteration {
  AgentId agent = 0;
  /// Matching branch: the neighbours F_i merged with the agent.
  /// Clique branch: the agents removed from F.
  std::vector<AgentId> affected;
};

struct FhgStabilizerTrace {
  FhgThresholds thresholds;
  std::size_t low_degree = 0;  // phi
  FhgBranch branch = FhgBranch::kClique;
  std::vector<AgentId> green;  // Gr, in selection order
  std::vector<FhgIteration> iterations;
  /// Clique branch only: the final clique F.
  std::vector<AgentId> clique;
  /// True when the loop stopped before exhausting its budget.
  bool starved = false;
};

/// Degree-based stabilizer for simple fractional games. With many
/// low-degree agents it pairs the lowest-degree agents with a few neighbours
/// each; otherwise it grows a clique around the highest-degree agents and
/// returns {F, N \ F}.
std::pair<Partition, FhgStabilizerTrace> stabilize_fhg(const SimpleFhg& game, const FhgThresholds& thresholds);
std::pair<Partition, FhgStabilizerTrace> stabilize_fhg(const SimpleFhg& game);

// ---------------------------------------------------------------------------
// Anonymous games

class StabilizerError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct AnonStabilizerTrace {
  SizeInterval interval;
  std::size_t s_star = 0;
  std::size_t q = 0;
  std::size_t r = 0;
  /// Agents in a block whose size maximises their valuation over the interval.
  std::vector<AgentId> green_agents;
  /// Per-agent preferred size within the interval.
  std::vector<std::size_t> interval_peaks;

  // Single-peaked variant only. Sizes of the interval in the single-peaked
  // ordering, the chosen index h* (0-based), and the L/E/G sets with their
  // restrictions to the s*-blocks.
  std::vector<std::size_t> ordered_sizes;
  std::size_t h_star = 0;
  std::vector<AgentId> lower, equal, greater;
  std::vector<AgentId> lower_in, equal_in, greater_in;
};

/// Picks the size in `interval` preferred by the most agents and fills
/// q = n / s* blocks of that size, agents who prefer it first, leaving the
/// remaining r = n mod s* agents together. Only sizes in the interval are
/// read from `table`. Throws StabilizerError for an empty interval or
/// missing valuations.
std::pair<Partition, AnonStabilizerTrace> stabilize_anonymous(const SizeTable& table, const SizeInterval& interval);

/// Single-peaked refinement: orders the interval's sizes along `ordering`,
/// picks the furthest index h* with at most n/2 agents peaking strictly
/// before it, and fills blocks of size s_{h*} giving priority to agents
/// peaking exactly there.
std::pair<Partition, AnonStabilizerTrace> stabilize_single_peaked(const SizeTable& table,
                                                                  const std::vector<std::size_t>& ordering,
                                                                  const SizeInterval& interval);
std::pair<Partition, AnonStabilizerTrace> stabilize_single_peaked(const AnonymousGame& game,
                                                                  const SinglePeakedCertificate& certificate,
                                                                  const SizeInterval& interval);

// ---------------------------------------------------------------------------

enum class GameClass { kFhg, kAnonymous, kAnonymousSinglePeaked };

GameClass parse_game_class(const std::string& name);
std::string to_string(GameClass c);

/// Smallest eps for which the corresponding construction is guaranteed:
/// fhg 2^-(n^(1/3)/124 - 1); anon 4 lambda / 2^(c n^(1/3)) with
/// c = 1/sqrt(13(lambda+1)); anon-sp 4 lambda / 2^(n/4).
double choose_epsilon_floor(std::size_t n, double lambda, GameClass cls);

}  // namespace epsfc

#endif  // EPSFC_STABILIZERS_HPP
