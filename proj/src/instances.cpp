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


#include "epsfc/instances.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "epsfc/random.hpp"
#include "epsfc/verification.hpp"
#include "parallel.hpp"

namespace epsfc {
namespace {

constexpr std::size_t kSearchMaxN = 10;

void shuffle(std::vector<std::size_t>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_below(rng, i)]);
}

/// Runs `attempt(index)` in batches until one returns an instance; the
/// smallest successful index wins.
template <typename Instance, typename Attempt>
SearchResult<Instance> search(std::size_t max_attempts, std::size_t jobs, Attempt&& attempt) {
  SearchResult<Instance> result;
  const std::size_t batch = std::max<std::size_t>(1, jobs) * 64;
  for (std::size_t start = 0; start < max_attempts; start += batch) {
    const std::size_t count = std::min(batch, max_attempts - start);
    std::vector<std::optional<Instance>> found(count);
    detail::run_chunks(count, jobs, [&](std::size_t k) { found[k] = attempt(start + k); });
    for (std::size_t k = 0; k < count; ++k)
      if (found[k]) {
        result.instance = std::move(found[k]);
        result.hit_index = start + k;
        result.attempts = start + k + 1;
        return result;
      }
    result.attempts = start + count;
  }
  return result;
}

}  // namespace

SimpleFhg random_fhg(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("arc probability must lie in [0, 1]");
  Rng rng(seed);
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (AgentId i = 0; i < n; ++i)
    for (AgentId j = 0; j < n; ++j)
      if (i != j) adj[i][j] = uniform_unit(rng) < p;
  return SimpleFhg(adj);
}

AnonymousGame random_anon(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> vals(n, std::vector<double>(n));
  std::vector<std::size_t> rank(n);
  for (AgentId i = 0; i < n; ++i) {
    std::iota(rank.begin(), rank.end(), std::size_t{1});
    shuffle(rank, rng);
    for (std::size_t s = 0; s < n; ++s) vals[i][s] = static_cast<double>(rank[s]) / static_cast<double>(n);
  }
  return AnonymousGame(vals);
}

SinglePeakedInstance random_anon_sp(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> vals(n, std::vector<double>(n));
  for (AgentId i = 0; i < n; ++i) {
    const std::size_t peak = 1 + uniform_below(rng, n);
    std::size_t left = peak;   // next size to the left is left - 1
    std::size_t right = peak;  // next size to the right is right + 1
    std::size_t level = n;
    vals[i][peak - 1] = 1.0;
    while (--level > 0) {
      const bool can_left = left > 1;
      const bool can_right = right < n;
      const bool go_left = can_left && (!can_right || uniform_below(rng, 2) == 0);
      const std::size_t s = go_left ? --left : ++right;
      vals[i][s - 1] = static_cast<double>(level) / static_cast<double>(n);
    }
  }
  AnonymousGame game(vals);
  auto checked = check_single_peaked(game, natural_ordering(n));
  return {std::move(game), std::get<SinglePeakedCertificate>(std::move(checked))};
}

SearchResult<SinglePeakedInstance> find_empty_core_sp(std::size_t n, std::size_t max_attempts, std::uint64_t seed,
                                                      std::size_t jobs) {
  if (n > kSearchMaxN) throw std::invalid_argument("empty-core search supports at most 10 agents");
  auto result = search<SinglePeakedInstance>(max_attempts, jobs, [&](std::size_t k) {
    auto inst = random_anon_sp(n, derive_seed(seed, "sp-search", k));
    return certify_empty_core(inst.game) ? std::optional(std::move(inst)) : std::nullopt;
  });
  if (result.hit_index) result.attempt_seed = derive_seed(seed, "sp-search", *result.hit_index);
  return result;
}

SearchResult<SimpleFhg> find_empty_core_fhg(std::size_t n, double p, std::size_t max_attempts, std::uint64_t seed,
                                            std::size_t jobs) {
  if (n > kSearchMaxN) throw std::invalid_argument("empty-core search supports at most 10 agents");
  auto result = search<SimpleFhg>(max_attempts, jobs, [&](std::size_t k) {
    auto game = random_fhg(n, p, derive_seed(seed, "fhg-search", k));
    return certify_empty_core(game) ? std::optional(std::move(game)) : std::nullopt;
  });
  if (result.hit_index) result.attempt_seed = derive_seed(seed, "fhg-search", *result.hit_index);
  return result;
}

SimpleFhg extend_fhg(const SimpleFhg& base, std::size_t n) {
  const std::size_t b = base.agents();
  if (n <= b) throw std::invalid_argument("extension must add at least one agent");
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (AgentId i = 0; i < b; ++i)
    for (AgentId j = 0; j < b; ++j) adj[i][j] = base.arc(i, j);
  for (AgentId i = b; i < n; ++i)
    for (AgentId j = b; j < n; ++j) adj[i][j] = i != j;
  return SimpleFhg(adj);
}

SinglePeakedInstance extend_anon_sp(const AnonymousGame& base, std::size_t n) {
  const std::size_t b = base.agents();
  if (n <= b) throw std::invalid_argument("extension must add at least one agent");
  if (std::holds_alternative<SinglePeakViolation>(check_single_peaked(base, natural_ordering(b))))
    throw std::invalid_argument("base game is not single-peaked in the natural ordering");
  std::vector<std::vector<double>> vals(n, std::vector<double>(n));
  for (AgentId i = 0; i < b; ++i) {
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t s = 1; s <= b; ++s) {
      vals[i][s - 1] = base.value_at_size(i, s);
      lowest = std::min(lowest, vals[i][s - 1]);
    }
    for (std::size_t s = b + 1; s <= n; ++s) vals[i][s - 1] = lowest - static_cast<double>(s - b);
  }
  for (AgentId i = b; i < n; ++i)
    for (std::size_t s = 1; s <= n; ++s) vals[i][s - 1] = static_cast<double>(s);
  AnonymousGame game(vals);
  auto checked = check_single_peaked(game, natural_ordering(n));
  return {std::move(game), std::get<SinglePeakedCertificate>(std::move(checked))};
}

std::vector<Coalition> adversarial_family(std::size_t base_n, std::size_t n) {
  if (base_n > n) throw std::invalid_argument("base block larger than the agent set");
  if (base_n > 24) throw std::invalid_argument("adversarial family supports base blocks of at most 24 agents");
  std::vector<Coalition> family;
  family.reserve((std::size_t{1} << base_n));
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << base_n); ++m) {
    Coalition c(n);
    for (std::uint64_t r = m; r != 0; r &= r - 1) c.insert(static_cast<AgentId>(std::countr_zero(r)));
    family.push_back(std::move(c));
  }
  if (base_n < n) {
    Coalition rest(n);
    for (AgentId i = base_n; i < n; ++i) rest.insert(i);
    family.push_back(std::move(rest));
  }
  return family;
}

// ---------------------------------------------------------------------------

GeneratorKind parse_generator_kind(const std::string& name) {
  if (name == "fhg-random") return GeneratorKind::kFhgRandom;
  if (name == "anon-random") return GeneratorKind::kAnonRandom;
  if (name == "anon-sp-random") return GeneratorKind::kAnonSpRandom;
  if (name == "fhg-extend") return GeneratorKind::kFhgExtend;
  if (name == "anon-sp-extend") return GeneratorKind::kAnonSpExtend;
  throw std::invalid_argument("unknown generator kind '" + name + "'");
}

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kFhgRandom: return "fhg-random";
    case GeneratorKind::kAnonRandom: return "anon-random";
    case GeneratorKind::kAnonSpRandom: return "anon-sp-random";
    case GeneratorKind::kFhgExtend: return "fhg-extend";
    case GeneratorKind::kAnonSpExtend: return "anon-sp-extend";
  }
  return "?";
}

GeneratedInstance generate(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorKind::kFhgRandom:
      return {random_fhg(spec.n, spec.p, spec.seed), std::nullopt};
    case GeneratorKind::kAnonRandom:
      return {random_anon(spec.n, spec.seed), std::nullopt};
    case GeneratorKind::kAnonSpRandom: {
      auto inst = random_anon_sp(spec.n, spec.seed);
      return {std::move(inst.game), std::move(inst.certificate)};
    }
    case GeneratorKind::kFhgExtend: {
      const auto* base = spec.base ? std::get_if<SimpleFhg>(&*spec.base) : nullptr;
      if (base == nullptr) throw std::invalid_argument("fhg-extend needs a simple fractional base game");
      return {extend_fhg(*base, spec.n), std::nullopt};
    }
    case GeneratorKind::kAnonSpExtend: {
      const auto* base = spec.base ? std::get_if<AnonymousGame>(&*spec.base) : nullptr;
      if (base == nullptr) throw std::invalid_argument("anon-sp-extend needs an anonymous base game");
      auto inst = extend_anon_sp(*base, spec.n);
      return {std::move(inst.game), std::move(inst.certificate)};
    }
  }
  throw std::logic_error("unknown generator kind");
}

}  // namespace epsfc
