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

// Exact and statistical measurement of how many coalitions block a
// partition.
//
// Exact routines enumerate all 2^n - 1 coalitions and are guarded by
// enumeration_limit() (24 agents unless EPSFC_MAX_N says otherwise). Simple
// fractional games are walked in Gray-code order so that each step toggles a
// single agent and the per-agent neighbour counts |S ∩ N_i| update in time
// proportional to that agent's in-degree. Anonymous games need no walk at
// all: a coalition of size s blocks iff it is drawn from the agents that
// strictly prefer size s to their current block size, so per-size counts are
// binomial coefficients.

#ifndef EPSFC_VERIFICATION_HPP
#define EPSFC_VERIFICATION_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "epsfc/distributions.hpp"
#include "epsfc/game.hpp"
#include "epsfc/stabilizers.hpp"

namespace epsfc {

/// Raised when an exact computation would exceed its enumeration guard.
class EnumerationLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest n for subset enumeration: EPSFC_MAX_N if set, else 24.
std::size_t enumeration_limit();
/// Largest n for set-partition enumeration: EPSFC_MAX_N if set, else 12.
std::size_t partition_enumeration_limit();

struct BlockingReport {
  std::size_t agents = 0;
  std::uint64_t total_coalitions = 0;
  std::uint64_t blocking_count = 0;
  Fraction fraction{0};
  /// blocking_by_size[s] = number of blocking coalitions of size s.
  std::vector<std::uint64_t> blocking_by_size;
  std::optional<double> mass;
  /// At most kMaxWitnesses blocking coalitions.
  std::vector<Coalition> witnesses;

  static constexpr std::size_t kMaxWitnesses = 100;
};

/// Counts every blocking coalition. `jobs` > 1 splits the walk into chunks
/// processed concurrently; results do not depend on `jobs`.
BlockingReport exact_blocking(const Game& game, const Partition& pi, std::size_t jobs = 1);

/// Probability that a coalition drawn from `dist` blocks `pi`.
double exact_blocking_mass(const Game& game, const Partition& pi, const CoalitionDistribution& dist,
                           std::size_t jobs = 1);

/// Same, reusing the per-size counts of an existing report.
double blocking_mass_from_report(const Game& game, const Partition& pi, const CoalitionDistribution& dist,
                                 const BlockingReport& report);

/// Calls `visit(mask)` for every blocking coalition (n <= 63).
void for_each_blocker(const Game& game, const Partition& pi, const std::function<void(std::uint64_t)>& visit);

/// True iff no coalition blocks `pi`. Stops at the first blocker found.
bool is_core_stable(const Game& game, const Partition& pi);

// ---------------------------------------------------------------------------
// Monte Carlo

struct McEstimate {
  std::size_t samples = 0;
  std::size_t hits = 0;
  double p_hat = 0.0;
  double ci_halfwidth = 0.0;
  double delta = 0.0;
};

/// Two-sided Hoeffding half-width sqrt(ln(2/delta) / (2m)).
double hoeffding_halfwidth(std::size_t m, double delta);

using BlockingOracle = std::function<bool(const Coalition&)>;

/// Estimates the blocking mass from `m` independent draws. Draws are split
/// into fixed-size shards, each with its own seed stream derived from `seed`,
/// so the estimate is the same for any `jobs`.
McEstimate mc_blocking(const BlockingOracle& oracle, const CoalitionDistribution& dist, std::size_t m, double delta,
                       std::uint64_t seed, std::size_t jobs = 1);
McEstimate mc_blocking(const Game& game, const Partition& pi, const CoalitionDistribution& dist, std::size_t m,
                       double delta, std::uint64_t seed, std::size_t jobs = 1);

// ---------------------------------------------------------------------------
// Audits

/// Agents whose block size lies in the interval and attains their maximum
/// valuation over it.
std::vector<AgentId> audit_green_anonymous(const SizeTable& table, const Partition& pi, const SizeInterval& interval);

struct SpLemmaReport {
  std::uint64_t blockers = 0;
  std::uint64_t blockers_in_interval = 0;
  /// 2^(3n/4 + 1).
  double count_bound = 0.0;

  bool equal_avoided = true;
  bool no_mixing = true;
  bool count_within_bound = true;
  std::optional<Coalition> equal_witness;
  std::optional<Coalition> mixing_witness;
  /// Blockers outside the interval that contain an E' agent (informational:
  /// possible only when an agent's global peak lies outside the interval).
  std::uint64_t equal_hits_outside_interval = 0;

  bool ok() const { return equal_avoided && no_mixing && count_within_bound; }
};

/// Enumerates every blocker of `pi` and checks the structural facts behind
/// the single-peaked construction: blockers with size in the interval avoid
/// E', never mix L' and G', and number at most 2^(3n/4 + 1).
SpLemmaReport check_sp_lemmas(const AnonymousGame& game, const Partition& pi, const SizeInterval& interval,
                              const AnonStabilizerTrace& trace);

// ---------------------------------------------------------------------------
// Core emptiness

/// Calls `visit(labels, blocks)` for every set partition of n agents in
/// restricted-growth order; labels[i] is agent i's block. Returning false
/// from `visit` stops the walk.
void for_each_set_partition(std::size_t n,
                            const std::function<bool(const std::vector<std::size_t>&, std::size_t)>& visit);

Partition partition_from_labels(const std::vector<std::size_t>& labels, std::size_t blocks);

/// First core-stable partition in restricted-growth order, if any.
std::optional<Partition> find_core_stable(const Game& game);

/// True iff every partition admits a blocking coalition. Guarded by
/// partition_enumeration_limit().
bool certify_empty_core(const Game& game);

// ---------------------------------------------------------------------------
// Green-agent decompositions

/// Splits the blocking coalitions of a partition by whether they meet a set
/// of agents (the stabilizer's Gr).
struct GreenDecomposition {
  std::uint64_t total = 0;
  std::uint64_t blocking = 0;
  std::uint64_t missing_green = 0;           // non-empty C with C ∩ Gr = ∅
  std::uint64_t blocking_missing_green = 0;  // blockers with C ∩ Gr = ∅
  std::uint64_t blocking_meeting_green = 0;  // blockers with C ∩ Gr ≠ ∅

  bool identity_holds() const { return blocking == blocking_missing_green + blocking_meeting_green; }
  /// fraction <= P(C ∩ Gr = ∅) + fraction of Gr-meeting blockers.
  bool bound_holds() const { return blocking <= missing_green + blocking_meeting_green; }
};

GreenDecomposition green_decomposition(const Game& game, const Partition& pi, const std::vector<AgentId>& green);

/// Exact terms of the green-agent bound for anonymous games:
/// mass <= P(|C| not in I) + bartlett_hi(2^-g, lambda).
struct AnonGreenBound {
  double mass = 0.0;
  double outside_interval = 0.0;
  double bartlett_term = 0.0;
  std::size_t green = 0;

  double bound() const { return outside_interval + bartlett_term; }
  bool holds() const { return mass <= bound(); }
};

AnonGreenBound anonymous_green_bound(const AnonymousGame& game, const Partition& pi, const SizeInterval& interval,
                                     const CoalitionDistribution& dist, double lambda);

}  // namespace epsfc

#endif  // EPSFC_VERIFICATION_HPP
