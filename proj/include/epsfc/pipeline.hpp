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


// Learning phase followed by the computation phase, for either a known game
// or a sample set.

#ifndef EPSFC_PIPELINE_HPP
#define EPSFC_PIPELINE_HPP

#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "epsfc/distributions.hpp"
#include "epsfc/game.hpp"
#include "epsfc/learning.hpp"
#include "epsfc/stabilizers.hpp"

namespace epsfc {

/// The learner could not pin down every valuation it needs.
class LearnerFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PipelineParams {
  GameClass cls = GameClass::kFhg;
  double eps = 0.1;
  double delta = 0.1;
  double lambda = 1.0;
  /// Mean-estimation slack; default_alpha(n, lambda) when unset.
  std::optional<double> alpha;
  /// Size ordering for the single-peaked class; natural when unset.
  std::optional<std::vector<std::size_t>> ordering;
};

using StabilizerTrace = std::variant<FhgStabilizerTrace, AnonStabilizerTrace>;

struct StabilizeOutcome {
  Partition partition;
  StabilizerTrace trace;
};

/// Sample count that the learner for `params.cls` is guaranteed to succeed
/// with, with probability at least 1 - delta.
std::size_t default_sample_size(const PipelineParams& params, std::size_t n);

/// Computation phase on a known game; the anonymous classes take the size
/// interval around the true mean size of `dist`.
StabilizeOutcome stabilize_game(const Game& game, const CoalitionDistribution& dist, const PipelineParams& params);

/// Learns from `samples` and then stabilizes the learned game.
StabilizeOutcome stabilize_from_samples(std::size_t n, const std::vector<SampleRecord>& samples,
                                        const PipelineParams& params);

}  // namespace epsfc

#endif  // EPSFC_PIPELINE_HPP
