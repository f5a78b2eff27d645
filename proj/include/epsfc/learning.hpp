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

#ifndef EPSFC_LEARNING_HPP
#define EPSFC_LEARNING_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "epsfc/coalition.hpp"
#include "epsfc/distributions.hpp"
#include "epsfc/game.hpp"

namespace epsfc {

/// A sampled coalition together with the valuation every member reports.
struct SampleRecord {
  Coalition coalition;
  std::map<AgentId, double> member_values;

  /// Throws std::invalid_argument unless values are keyed exactly by members.
  void validate() const;
};

/// Raised when samples contradict the assumed valuation model.
class InconsistentSamples : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Draws `m` coalitions from `dist` and records every member's valuation.
std::vector<SampleRecord> draw_samples(const Game& game, const CoalitionDistribution& dist, std::size_t m, Rng& rng);

// ---------------------------------------------------------------------------
// Simple fractional games

/// ceil(16 ln(n/delta)) + 4n.
std::size_t fhg_sample_size(std::size_t n, double delta);

enum class AgentLearnStatus { kLearned, kNoSamples, kRankDeficient };

struct FhgLearnResult {
  std::optional<SimpleFhg> game;
  std::vector<AgentLearnStatus> status;
  /// Rank reached by each agent's system (target n - 1).
  std::vector<std::size_t> rank;

  bool ok() const { return game.has_value(); }
  std::vector<AgentId> failed_agents() const;
};

/// Recovers the adjacency of a simple fractional game from sampled
/// valuations by solving, for every agent, the exact linear system whose
/// rows are the membership indicators of the other agents in each sampled
/// coalition. Agents whose system is under-determined are reported in the
/// result; a system with no {0,1} solution raises InconsistentSamples.
FhgLearnResult learn_fhg(std::size_t n, const std::vector<SampleRecord>& samples);

/// Result of an exact integer solve. `values` is filled iff the system is
/// consistent and has full column rank.
struct IntegerSystemSolution {
  std::size_t rank = 0;
  bool consistent = true;
  std::vector<boost::multiprecision::cpp_rational> values;
};

/// Solves A x = b exactly by fraction-free (Bareiss) elimination. Each row of
/// `a` has `columns` entries.
IntegerSystemSolution solve_integer_system(const std::vector<std::vector<int>>& a, const std::vector<long long>& b,
                                           std::size_t columns);

// ---------------------------------------------------------------------------
// Anonymous games

/// ceil(2 lambda (1 + lambda) n^2 ln(n^2/delta) / eps).
std::size_t anon_sample_size(std::size_t n, double delta, double eps, double lambda);

/// ceil(n^2 ln(2/delta) / (2 alpha^2)).
std::size_t mean_confidence_m(std::size_t n, double alpha, double delta);

/// Per-(agent, size) valuations observed in a sample plus the empirical mean
/// coalition size.
struct LearnedAnonymous {
  SizeTable table;
  std::size_t samples = 0;
  std::optional<double> mean_size;

  std::size_t agents() const { return table.agents(); }
  /// Throws std::logic_error when no samples were seen.
  double mu_hat() const;
  /// Sizes whose valuations are known for every agent.
  std::vector<std::size_t> learned_sizes() const;
};

/// Throws InconsistentSamples if two records disagree on v_i(s).
LearnedAnonymous learn_anonymous(std::size_t n, const std::vector<SampleRecord>& samples);

/// min{1/(2 sqrt n), n/(lambda + 1)}.
double default_alpha(std::size_t n, double lambda);

class EmptyInterval : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sizes strictly between the extreme points (1 +- Delta)(mu_hat +- alpha)
/// that are learned for every agent. Throws EmptyInterval if none remain.
SizeInterval estimate_interval(const LearnedAnonymous& learned, double lambda, double eps, double alpha);

}  // namespace epsfc

#endif  // EPSFC_LEARNING_HPP
