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

#include "epsfc/stabilizers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

namespace epsfc {

FhgThresholds default_fhg_thresholds(std::size_t n) {
  const double nd = static_cast<double>(n);
  const double cbrt = std::cbrt(nd);
  FhgThresholds t;
  const double cut = std::floor(nd - 31.0 * cbrt * cbrt);
  t.degree_cut = cut <= 0.0 ? 0 : std::min(static_cast<std::size_t>(cut), n == 0 ? 0 : n - 1);
  t.candidates = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(cbrt / 62.0)));
  t.budget = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(cbrt / 124.0)));
  return t;
}

namespace {

std::pair<Partition, FhgStabilizerTrace> matching_branch(const SimpleFhg& game, FhgStabilizerTrace trace) {
  const std::size_t n = game.agents();
  std::vector<AgentId> order(n);
  std::iota(order.begin(), order.end(), AgentId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](AgentId a, AgentId b) { return game.out_degree(a) < game.out_degree(b); });

  const std::size_t h = std::min(trace.thresholds.candidates, n);
  std::vector<AgentId> candidates(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(h));
  std::vector<bool> in_h(n, false);
  for (AgentId a : candidates) in_h[a] = true;

  // Current blocks; agents point at their block index.
  std::vector<Coalition> blocks;
  std::vector<std::size_t> block_of(n);
  for (AgentId a = 0; a < n; ++a) {
    block_of[a] = blocks.size();
    blocks.emplace_back(n, std::initializer_list<AgentId>{a});
  }

  for (std::size_t count = 0; count < trace.thresholds.budget; ++count) {
    auto next = std::find_if(candidates.begin(), candidates.end(), [&](AgentId a) { return in_h[a]; });
    if (next == candidates.end()) {
      trace.starved = true;
      break;
    }
    const AgentId i = *next;
    trace.green.push_back(i);

    const std::size_t d = game.out_degree(i);
    const std::size_t want = std::min(d, (2 * d + (n - d) - 1) / (n - d));

    // Singleton neighbours outside H first, then singletons inside H, then
    // neighbours already grouped; ascending id within each tier.
    std::vector<AgentId> tiers[3];
    game.out_neighbours(i).for_each([&](AgentId j) {
      const bool singleton = blocks[block_of[j]].size() == 1;
      tiers[singleton ? (in_h[j] ? 1 : 0) : 2].push_back(j);
    });
    std::vector<AgentId> picked;
    for (auto& tier : tiers)
      for (AgentId j : tier)
        if (picked.size() < want) picked.push_back(j);

    Coalition merged = blocks[block_of[i]];
    for (AgentId j : picked) merged |= blocks[block_of[j]];
    const std::size_t target = block_of[i];
    std::vector<bool> absorbed(blocks.size(), false);
    for (AgentId j : picked)
      if (block_of[j] != target) absorbed[block_of[j]] = true;
    for (std::size_t b = 0; b < blocks.size(); ++b)
      if (absorbed[b]) blocks[b] = Coalition(n);
    blocks[target] = merged;
    merged.for_each([&](AgentId a) { block_of[a] = target; });

    in_h[i] = false;
    for (AgentId j : picked) in_h[j] = false;
    trace.iterations.push_back({i, picked});
  }

  std::vector<Coalition> nonempty;
  for (auto& b : blocks)
    if (!b.empty()) nonempty.push_back(std::move(b));
  return {Partition::from_coalitions(n, nonempty), std::move(trace)};
}

std::pair<Partition, FhgStabilizerTrace> clique_branch(const SimpleFhg& game, FhgStabilizerTrace trace) {
  const std::size_t n = game.agents();
  Coalition clique = Coalition::full(n);
  Coalition chosen(n);
  for (std::size_t count = 0; count < trace.thresholds.budget; ++count) {
    std::optional<AgentId> best;
    clique.for_each([&](AgentId a) {
      if (chosen.contains(a)) return;
      if (!best || game.out_degree(a) > game.out_degree(*best)) best = a;
    });
    if (!best) {
      trace.starved = true;
      break;
    }
    const AgentId i = *best;
    Coalition keep = game.out_neighbours(i);
    keep.insert(i);
    std::vector<AgentId> removed;
    clique.for_each([&](AgentId a) {
      if (!keep.contains(a)) removed.push_back(a);
    });
    clique &= keep;
    chosen.insert(i);
    trace.green.push_back(i);
    trace.iterations.push_back({i, std::move(removed)});
  }
  trace.clique = clique.members();
  std::vector<Coalition> blocks{clique};
  if (clique.size() < n) blocks.push_back(clique.complement());
  return {Partition::from_coalitions(n, blocks), std::move(trace)};
}

void check_interval(const SizeTable& table, const SizeInterval& interval) {
  const std::size_t n = table.agents();
  if (interval.sizes.empty()) throw StabilizerError("size interval is empty");
  for (std::size_t s : interval.sizes) {
    if (s == 0 || s > n) throw StabilizerError("interval size " + std::to_string(s) + " outside [1, n]");
    if (!table.known_for_all(s))
      throw StabilizerError("valuations for size " + std::to_string(s) + " are not known for every agent");
  }
}

/// Index into `sizes` of the agent's best size, earliest on ties.
std::size_t preferred_index(const SizeTable& table, AgentId i, const std::vector<std::size_t>& sizes) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < sizes.size(); ++k)
    if (table.at(i, sizes[k]) > table.at(i, sizes[best])) best = k;
  return best;
}

/// Fills n / s blocks of size s from `order`, the rest into one block.
Partition fill_blocks(std::size_t n, std::size_t s, const std::vector<AgentId>& order) {
  std::vector<std::vector<AgentId>> blocks;
  const std::size_t filled = (n / s) * s;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k < filled ? k % s == 0 : k == filled) blocks.emplace_back();
    blocks.back().push_back(order[k]);
  }
  return Partition::from_blocks(n, blocks);
}

std::vector<AgentId> green_in(const SizeTable& table, const Partition& pi, const SizeInterval& interval,
                              const std::vector<std::size_t>& peak_size) {
  std::vector<AgentId> green;
  for (AgentId i = 0; i < table.agents(); ++i) {
    const std::size_t s = pi.block_size(i);
    if (interval.contains(s) && table.at(i, s) >= table.at(i, peak_size[i])) green.push_back(i);
  }
  return green;
}

}  // namespace

std::pair<Partition, FhgStabilizerTrace> stabilize_fhg(const SimpleFhg& game, const FhgThresholds& thresholds) {
  const std::size_t n = game.agents();
  if (n < 2) throw std::invalid_argument("stabilize_fhg needs at least two agents");
  FhgStabilizerTrace trace;
  trace.thresholds = thresholds;
  for (AgentId a = 0; a < n; ++a)
    if (game.out_degree(a) <= thresholds.degree_cut) ++trace.low_degree;
  if (trace.low_degree >= thresholds.candidates) {
    trace.branch = FhgBranch::kMatching;
    return matching_branch(game, std::move(trace));
  }
  trace.branch = FhgBranch::kClique;
  return clique_branch(game, std::move(trace));
}

std::pair<Partition, FhgStabilizerTrace> stabilize_fhg(const SimpleFhg& game) {
  return stabilize_fhg(game, default_fhg_thresholds(game.agents()));
}

std::pair<Partition, AnonStabilizerTrace> stabilize_anonymous(const SizeTable& table, const SizeInterval& interval) {
  check_interval(table, interval);
  const std::size_t n = table.agents();
  const auto& sizes = interval.sizes;

  AnonStabilizerTrace trace;
  trace.interval = interval;
  trace.interval_peaks.resize(n);
  std::vector<std::size_t> votes(sizes.size(), 0);
  for (AgentId i = 0; i < n; ++i) {
    std::size_t k = preferred_index(table, i, sizes);
    trace.interval_peaks[i] = sizes[k];
    ++votes[k];
  }
  const auto top = static_cast<std::size_t>(std::max_element(votes.begin(), votes.end()) - votes.begin());
  trace.s_star = sizes[top];
  trace.q = n / trace.s_star;
  trace.r = n % trace.s_star;

  std::vector<AgentId> order;
  order.reserve(n);
  for (AgentId i = 0; i < n; ++i)
    if (trace.interval_peaks[i] == trace.s_star) order.push_back(i);
  for (AgentId i = 0; i < n; ++i)
    if (trace.interval_peaks[i] != trace.s_star) order.push_back(i);

  Partition pi = fill_blocks(n, trace.s_star, order);
  trace.green_agents = green_in(table, pi, interval, trace.interval_peaks);
  return {std::move(pi), std::move(trace)};
}

std::pair<Partition, AnonStabilizerTrace> stabilize_single_peaked(const SizeTable& table,
                                                                  const std::vector<std::size_t>& ordering,
                                                                  const SizeInterval& interval) {
  check_interval(table, interval);
  const std::size_t n = table.agents();
  if (ordering.size() != n) throw StabilizerError("ordering must list every size 1..n");
  std::vector<std::size_t> position(n + 1, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (ordering[k] == 0 || ordering[k] > n || position[ordering[k]] != n)
      throw StabilizerError("ordering is not a permutation of 1..n");
    position[ordering[k]] = k;
  }

  AnonStabilizerTrace trace;
  trace.interval = interval;
  trace.ordered_sizes = interval.sizes;
  std::sort(trace.ordered_sizes.begin(), trace.ordered_sizes.end(),
            [&](std::size_t a, std::size_t b) { return position[a] < position[b]; });
  const auto& sizes = trace.ordered_sizes;

  std::vector<std::size_t> peak_index(n);
  trace.interval_peaks.resize(n);
  for (AgentId i = 0; i < n; ++i) {
    peak_index[i] = preferred_index(table, i, sizes);
    trace.interval_peaks[i] = sizes[peak_index[i]];
  }

  // |L_h| is non-decreasing in h, so h* is the last index before it exceeds n/2.
  for (std::size_t h = 0; h < sizes.size(); ++h) {
    const auto below = static_cast<std::size_t>(
        std::count_if(peak_index.begin(), peak_index.end(), [&](std::size_t p) { return p < h; }));
    if (2 * below <= n) trace.h_star = h;
  }
  trace.s_star = sizes[trace.h_star];
  trace.q = n / trace.s_star;
  trace.r = n % trace.s_star;

  std::vector<AgentId> order;
  for (AgentId i = 0; i < n; ++i) {
    if (peak_index[i] < trace.h_star)
      trace.lower.push_back(i);
    else if (peak_index[i] == trace.h_star)
      trace.equal.push_back(i);
    else
      trace.greater.push_back(i);
  }
  order = trace.equal;
  for (AgentId i = 0; i < n; ++i)
    if (peak_index[i] != trace.h_star) order.push_back(i);

  Partition pi = fill_blocks(n, trace.s_star, order);
  auto primed = [&](const std::vector<AgentId>& set) {
    std::vector<AgentId> out;
    for (AgentId i : set)
      if (pi.block_size(i) == trace.s_star) out.push_back(i);
    return out;
  };
  // With r == 0 every block has size s*; otherwise the r-block is the last.
  trace.lower_in = primed(trace.lower);
  trace.equal_in = primed(trace.equal);
  trace.greater_in = primed(trace.greater);
  trace.green_agents = green_in(table, pi, interval, trace.interval_peaks);
  return {std::move(pi), std::move(trace)};
}

std::pair<Partition, AnonStabilizerTrace> stabilize_single_peaked(const AnonymousGame& game,
                                                                  const SinglePeakedCertificate& certificate,
                                                                  const SizeInterval& interval) {
  auto check = check_single_peaked(game, certificate.ordering);
  if (!std::holds_alternative<SinglePeakedCertificate>(check))
    throw StabilizerError("game is not single-peaked along the certificate ordering");
  return stabilize_single_peaked(game.table(), certificate.ordering, interval);
}

GameClass parse_game_class(const std::string& name) {
  if (name == "fhg") return GameClass::kFhg;
  if (name == "anon") return GameClass::kAnonymous;
  if (name == "anon-sp") return GameClass::kAnonymousSinglePeaked;
  throw std::invalid_argument("unknown game class '" + name + "' (expected fhg, anon or anon-sp)");
}

std::string to_string(GameClass c) {
  switch (c) {
    case GameClass::kFhg:
      return "fhg";
    case GameClass::kAnonymous:
      return "anon";
    case GameClass::kAnonymousSinglePeaked:
      return "anon-sp";
  }
  return "?";
}

double choose_epsilon_floor(std::size_t n, double lambda, GameClass cls) {
  if (!(lambda >= 1.0)) throw std::invalid_argument("lambda must be >= 1");
  const double nd = static_cast<double>(n);
  switch (cls) {
    case GameClass::kFhg:
      return std::exp2(-(std::cbrt(nd) / 124.0 - 1.0));
    case GameClass::kAnonymous: {
      const double c = 1.0 / std::sqrt(13.0 * (lambda + 1.0));
      return 4.0 * lambda / std::exp2(c * std::cbrt(nd));
    }
    case GameClass::kAnonymousSinglePeaked:
      return 4.0 * lambda / std::exp2(nd / 4.0);
  }
  return 1.0;
}

}  // namespace epsfc
