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


#include "epsfc/pipeline.hpp"

#include <string>

namespace epsfc {
namespace {

std::vector<std::size_t> ordering_or_natural(const PipelineParams& params, std::size_t n) {
  return params.ordering ? *params.ordering : natural_ordering(n);
}

StabilizeOutcome from_anon(std::pair<Partition, AnonStabilizerTrace> r) {
  return {std::move(r.first), std::move(r.second)};
}

}  // namespace

std::size_t default_sample_size(const PipelineParams& params, std::size_t n) {
  if (params.cls == GameClass::kFhg) return fhg_sample_size(n, params.delta);
  return anon_sample_size(n, params.delta, params.eps, params.lambda);
}

StabilizeOutcome stabilize_game(const Game& game, const CoalitionDistribution& dist, const PipelineParams& params) {
  const std::size_t n = agents(game);
  if (params.cls == GameClass::kFhg) {
    const auto* fhg = std::get_if<SimpleFhg>(&game);
    if (fhg == nullptr) throw std::invalid_argument("class fhg needs a simple fractional game");
    auto [pi, trace] = stabilize_fhg(*fhg);
    return {std::move(pi), std::move(trace)};
  }
  const auto* anon = std::get_if<AnonymousGame>(&game);
  if (anon == nullptr) throw std::invalid_argument("anonymous classes need an anonymous game");
  if (dist.agents() != n) throw std::invalid_argument("distribution and game disagree on n");
  const SizeInterval interval = size_interval(dist.mean_size(), params.lambda, params.eps, n);
  if (params.cls == GameClass::kAnonymous) return from_anon(stabilize_anonymous(anon->table(), interval));
  auto checked = check_single_peaked(*anon, ordering_or_natural(params, n));
  if (const auto* bad = std::get_if<SinglePeakViolation>(&checked))
    throw std::invalid_argument("game is not single-peaked: agent " + std::to_string(bad->agent + 1) +
                                " ranks size " + std::to_string(bad->worse) + " above size " +
                                std::to_string(bad->better));
  return from_anon(stabilize_single_peaked(*anon, std::get<SinglePeakedCertificate>(checked), interval));
}

StabilizeOutcome stabilize_from_samples(std::size_t n, const std::vector<SampleRecord>& samples,
                                        const PipelineParams& params) {
  if (params.cls == GameClass::kFhg) {
    FhgLearnResult learned = learn_fhg(n, samples);
    if (!learned.ok()) {
      std::string ids;
      for (AgentId i : learned.failed_agents()) ids += (ids.empty() ? "" : ",") + std::to_string(i + 1);
      throw LearnerFailure("samples do not determine the preferences of agents {" + ids + "}");
    }
    auto [pi, trace] = stabilize_fhg(*learned.game);
    return {std::move(pi), std::move(trace)};
  }
  const LearnedAnonymous learned = learn_anonymous(n, samples);
  if (!learned.mean_size) throw LearnerFailure("no samples to estimate the mean coalition size from");
  const double alpha = params.alpha.value_or(default_alpha(n, params.lambda));
  const SizeInterval interval = estimate_interval(learned, params.lambda, params.eps, alpha);
  if (params.cls == GameClass::kAnonymous) return from_anon(stabilize_anonymous(learned.table, interval));
  return from_anon(stabilize_single_peaked(learned.table, ordering_or_natural(params, n), interval));
}

}  // namespace epsfc
