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

#include "epsfc/verification.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace epsfc {
namespace {

constexpr std::size_t kHardMaskLimit = 62;

std::size_t env_limit(std::size_t fallback) {
  if (const char* v = std::getenv("EPSFC_MAX_N")) {
    char* end = nullptr;
    unsigned long x = std::strtoul(v, &end, 10);
    if (end != v && *end == '\0') return std::min<std::size_t>(x, kHardMaskLimit);
  }
  return fallback;
}

void guard(std::size_t n, std::size_t limit, const char* what) {
  if (n > limit)
    throw EnumerationLimit(std::string(what) + " needs n <= " + std::to_string(limit) + " (got " + std::to_string(n) +
                           "); set EPSFC_MAX_N to override");
}

std::uint64_t binomial_u64(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;  // exact: r * (n-k+i) is divisible by i
  return r;
}

using detail::run_chunks;

// ---------------------------------------------------------------------------
// Simple fractional games: Gray-code walk

struct FhgView {
  std::size_t n = 0;
  std::vector<std::uint64_t> out;
  std::vector<std::vector<std::uint8_t>> in;
  std::vector<std::int64_t> current;     // |pi(i) ∩ N_i|
  std::vector<std::int64_t> block_size;  // |pi(i)|

  FhgView(const SimpleFhg& game, const Partition& pi) : n(game.agents()), out(n), in(n), current(n), block_size(n) {
    for (AgentId i = 0; i < n; ++i) {
      out[i] = game.out_neighbours(i).mask();
      game.in_neighbours(i).for_each([&](AgentId j) { in[i].push_back(static_cast<std::uint8_t>(j)); });
      current[i] = static_cast<std::int64_t>(pi.block_of(i).intersection_size(game.out_neighbours(i)));
      block_size[i] = static_cast<std::int64_t>(pi.block_size(i));
    }
  }

  /// Same game with blocks given directly as masks per agent.
  void rebase(const std::vector<std::uint64_t>& block_mask) {
    for (AgentId i = 0; i < n; ++i) {
      current[i] = std::popcount(block_mask[i] & out[i]);
      block_size[i] = std::popcount(block_mask[i]);
    }
  }

  /// Walks Gray indices [k0, k1); `on_block(mask, size)` returns false to stop.
  /// Returns false if stopped early.
  template <typename OnBlock>
  bool walk(std::uint64_t k0, std::uint64_t k1, OnBlock&& on_block) const {
    std::int64_t cnt[64];
    std::uint64_t mask = k0 ^ (k0 >> 1);
    for (AgentId i = 0; i < n; ++i) cnt[i] = std::popcount(mask & out[i]);
    std::int64_t size = std::popcount(mask);

    auto blocking = [&]() {
      for (std::uint64_t m = mask; m != 0; m &= m - 1) {
        const auto i = static_cast<std::size_t>(std::countr_zero(m));
        if (cnt[i] * block_size[i] <= current[i] * size) return false;
      }
      return true;
    };

    if (mask != 0 && blocking() && !on_block(mask, static_cast<std::size_t>(size))) return false;
    for (std::uint64_t k = k0 + 1; k < k1; ++k) {
      const int bit = std::countr_zero(k);
      mask ^= std::uint64_t{1} << bit;
      const std::int64_t step = ((mask >> bit) & 1U) != 0 ? 1 : -1;
      for (std::uint8_t i : in[static_cast<std::size_t>(bit)]) cnt[i] += step;
      size += step;
      if (mask != 0 && blocking() && !on_block(mask, static_cast<std::size_t>(size))) return false;
    }
    return true;
  }
};

// ---------------------------------------------------------------------------
// Anonymous games: per-size preference masks

/// better[s] = agents that strictly prefer size s to their current block.
std::vector<std::uint64_t> better_masks(const AnonymousGame& game, const std::vector<std::size_t>& block_size) {
  const std::size_t n = game.agents();
  std::vector<std::uint64_t> better(n + 1, 0);
  for (std::size_t s = 1; s <= n; ++s)
    for (AgentId i = 0; i < n; ++i)
      if (game.value_at_size(i, s) > game.value_at_size(i, block_size[i])) better[s] |= std::uint64_t{1} << i;
  return better;
}

std::vector<std::size_t> block_sizes(const Partition& pi) {
  std::vector<std::size_t> bs(pi.universe());
  for (AgentId i = 0; i < bs.size(); ++i) bs[i] = pi.block_size(i);
  return bs;
}

/// Visits every s-subset of `pool` in increasing combination order.
template <typename Visit>
bool for_each_subset_of_size(std::uint64_t pool, std::size_t s, Visit&& visit) {
  const auto k = static_cast<std::size_t>(std::popcount(pool));
  if (s == 0 || s > k) return true;
  std::vector<std::uint64_t> bits;
  for (std::uint64_t m = pool; m != 0; m &= m - 1) bits.push_back(m & (~m + 1));
  // Gosper's hack over k-bit indices (k <= 62, so no overflow).
  std::uint64_t idx = (std::uint64_t{1} << s) - 1;
  const std::uint64_t end = std::uint64_t{1} << k;
  while (idx < end) {
    std::uint64_t mask = 0;
    for (std::uint64_t m = idx; m != 0; m &= m - 1) mask |= bits[static_cast<std::size_t>(std::countr_zero(m))];
    if (!visit(mask)) return false;
    const std::uint64_t c = idx & (~idx + 1);
    const std::uint64_t r = idx + c;
    idx = (((r ^ idx) >> 2) / c) | r;
  }
  return true;
}

template <typename Visit>
bool for_each_anon_blocker(const std::vector<std::uint64_t>& better, std::size_t n, Visit&& visit) {
  for (std::size_t s = 1; s <= n; ++s)
    if (!for_each_subset_of_size(better[s], s, [&](std::uint64_t mask) { return visit(mask, s); })) return false;
  return true;
}

std::uint64_t mask_of(const std::vector<AgentId>& agents) {
  std::uint64_t m = 0;
  for (AgentId a : agents) m |= std::uint64_t{1} << a;
  return m;
}

}  // namespace

std::size_t enumeration_limit() { return env_limit(24); }
std::size_t partition_enumeration_limit() { return env_limit(12); }

// ---------------------------------------------------------------------------
// Exact blocking

BlockingReport exact_blocking(const Game& game, const Partition& pi, std::size_t jobs) {
  const std::size_t n = agents(game);
  guard(n, enumeration_limit(), "exact blocking enumeration");
  if (pi.universe() != n) throw std::invalid_argument("partition and game disagree on n");

  BlockingReport report;
  report.agents = n;
  report.total_coalitions = (std::uint64_t{1} << n) - 1;
  report.blocking_by_size.assign(n + 1, 0);

  if (const auto* fhg = std::get_if<SimpleFhg>(&game)) {
    const FhgView view(*fhg, pi);
    const std::uint64_t space = std::uint64_t{1} << n;
    const std::uint64_t chunk = std::min<std::uint64_t>(space, std::uint64_t{1} << 16);
    const std::size_t chunks = static_cast<std::size_t>(space / chunk);
    struct Partial {
      std::vector<std::uint64_t> by_size;
      std::vector<std::uint64_t> witnesses;
    };
    std::vector<Partial> partial(chunks);
    run_chunks(chunks, jobs, [&](std::size_t c) {
      Partial& p = partial[c];
      p.by_size.assign(n + 1, 0);
      view.walk(c * chunk, (c + 1) * chunk, [&](std::uint64_t mask, std::size_t size) {
        ++p.by_size[size];
        if (p.witnesses.size() < BlockingReport::kMaxWitnesses) p.witnesses.push_back(mask);
        return true;
      });
    });
    for (const auto& p : partial) {
      for (std::size_t s = 0; s <= n; ++s) report.blocking_by_size[s] += p.by_size[s];
      for (std::uint64_t w : p.witnesses)
        if (report.witnesses.size() < BlockingReport::kMaxWitnesses)
          report.witnesses.push_back(Coalition::from_mask(n, w));
    }
  } else {
    const auto& anon = std::get<AnonymousGame>(game);
    const auto better = better_masks(anon, block_sizes(pi));
    for (std::size_t s = 1; s <= n; ++s)
      report.blocking_by_size[s] = binomial_u64(static_cast<std::size_t>(std::popcount(better[s])), s);
    for_each_anon_blocker(better, n, [&](std::uint64_t mask, std::size_t) {
      report.witnesses.push_back(Coalition::from_mask(n, mask));
      return report.witnesses.size() < BlockingReport::kMaxWitnesses;
    });
  }

  for (std::uint64_t c : report.blocking_by_size) report.blocking_count += c;
  report.fraction = Fraction(static_cast<std::int64_t>(report.blocking_count),
                             static_cast<std::int64_t>(std::max<std::uint64_t>(report.total_coalitions, 1)));
  return report;
}

double blocking_mass_from_report(const Game& game, const Partition& pi, const CoalitionDistribution& dist,
                                 const BlockingReport& report) {
  const std::size_t n = report.agents;
  if (dist.agents() != n) throw std::invalid_argument("distribution and game disagree on n");
  using Kind = CoalitionDistribution::Kind;
  switch (dist.kind()) {
    case Kind::kUniform:
      return static_cast<double>(report.blocking_count) / static_cast<double>(report.total_coalitions);
    case Kind::kSizeTilted: {
      const auto pmf = dist.size_pmf();
      long double mass = 0.0L;
      for (std::size_t s = 1; s <= n; ++s)
        if (report.blocking_by_size[s] != 0)
          mass += static_cast<long double>(pmf[s]) * static_cast<long double>(report.blocking_by_size[s]) /
                  binomial(n, s);
      return static_cast<double>(mass);
    }
    case Kind::kFamily:
    case Kind::kAdversarial: {
      std::uint64_t on_family = 0;
      for (const auto& c : dist.family())
        if (blocks(game, c, pi)) ++on_family;
      const long double p = dist.adversarial_family_mass();
      if (dist.kind() == Kind::kFamily) return static_cast<double>(on_family * p);
      const long double off = static_cast<long double>(report.blocking_count - on_family);
      return static_cast<double>(on_family * p + off * (p / dist.lambda_parameter()));
    }
  }
  throw std::logic_error("unknown distribution kind");
}

double exact_blocking_mass(const Game& game, const Partition& pi, const CoalitionDistribution& dist,
                           std::size_t jobs) {
  const std::size_t n = agents(game);
  if (dist.kind() == CoalitionDistribution::Kind::kFamily) {
    // Only the support matters; no enumeration of 2^n needed.
    guard(n, enumeration_limit(), "exact blocking mass");
    if (dist.agents() != n) throw std::invalid_argument("distribution and game disagree on n");
    std::uint64_t hits = 0;
    for (const auto& c : dist.family())
      if (blocks(game, c, pi)) ++hits;
    return static_cast<double>(hits) * dist.adversarial_family_mass();
  }
  return blocking_mass_from_report(game, pi, dist, exact_blocking(game, pi, jobs));
}

void for_each_blocker(const Game& game, const Partition& pi, const std::function<void(std::uint64_t)>& visit) {
  const std::size_t n = agents(game);
  guard(n, std::min(enumeration_limit(), kHardMaskLimit), "blocker enumeration");
  if (const auto* fhg = std::get_if<SimpleFhg>(&game)) {
    const FhgView view(*fhg, pi);
    view.walk(0, std::uint64_t{1} << n, [&](std::uint64_t mask, std::size_t) {
      visit(mask);
      return true;
    });
  } else {
    const auto better = better_masks(std::get<AnonymousGame>(game), block_sizes(pi));
    for_each_anon_blocker(better, n, [&](std::uint64_t mask, std::size_t) {
      visit(mask);
      return true;
    });
  }
}

bool is_core_stable(const Game& game, const Partition& pi) {
  const std::size_t n = agents(game);
  if (const auto* fhg = std::get_if<SimpleFhg>(&game)) {
    guard(n, std::min(enumeration_limit(), kHardMaskLimit), "core stability check");
    const FhgView view(*fhg, pi);
    return view.walk(0, std::uint64_t{1} << n, [](std::uint64_t, std::size_t) { return false; });
  }
  const auto& anon = std::get<AnonymousGame>(game);
  const auto bs = block_sizes(pi);
  for (std::size_t s = 1; s <= n; ++s) {
    std::size_t willing = 0;
    for (AgentId i = 0; i < n; ++i)
      if (anon.value_at_size(i, s) > anon.value_at_size(i, bs[i])) ++willing;
    if (willing >= s) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Monte Carlo

double hoeffding_halfwidth(std::size_t m, double delta) {
  if (m == 0) throw std::invalid_argument("Monte Carlo needs at least one sample");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(m)));
}

McEstimate mc_blocking(const BlockingOracle& oracle, const CoalitionDistribution& dist, std::size_t m, double delta,
                       std::uint64_t seed, std::size_t jobs) {
  McEstimate est;
  est.samples = m;
  est.delta = delta;
  est.ci_halfwidth = hoeffding_halfwidth(m, delta);
  constexpr std::size_t kShard = std::size_t{1} << 14;
  const std::size_t shards = (m + kShard - 1) / kShard;
  std::vector<std::size_t> hits(shards, 0);
  run_chunks(shards, jobs, [&](std::size_t c) {
    Rng rng(derive_seed(seed, "mc", c));
    const std::size_t draws = std::min(kShard, m - c * kShard);
    for (std::size_t k = 0; k < draws; ++k)
      if (oracle(dist.sample(rng))) ++hits[c];
  });
  for (std::size_t h : hits) est.hits += h;
  est.p_hat = static_cast<double>(est.hits) / static_cast<double>(m);
  return est;
}

McEstimate mc_blocking(const Game& game, const Partition& pi, const CoalitionDistribution& dist, std::size_t m,
                       double delta, std::uint64_t seed, std::size_t jobs) {
  if (dist.agents() != agents(game) || pi.universe() != agents(game))
    throw std::invalid_argument("game, partition and distribution disagree on n");
  return mc_blocking([&](const Coalition& c) { return blocks(game, c, pi); }, dist, m, delta, seed, jobs);
}

// ---------------------------------------------------------------------------
// Audits

std::vector<AgentId> audit_green_anonymous(const SizeTable& table, const Partition& pi, const SizeInterval& interval) {
  std::vector<AgentId> green;
  for (AgentId i = 0; i < table.agents(); ++i) {
    const std::size_t own = pi.block_size(i);
    if (!interval.contains(own)) continue;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t s : interval.sizes) best = std::max(best, table.at(i, s));
    if (table.at(i, own) == best) green.push_back(i);
  }
  return green;
}

SpLemmaReport check_sp_lemmas(const AnonymousGame& game, const Partition& pi, const SizeInterval& interval,
                              const AnonStabilizerTrace& trace) {
  const std::size_t n = game.agents();
  guard(n, enumeration_limit(), "single-peaked lemma check");
  SpLemmaReport report;
  report.count_bound = std::exp2(3.0 * static_cast<double>(n) / 4.0 + 1.0);
  const std::uint64_t lower = mask_of(trace.lower_in);
  const std::uint64_t equal = mask_of(trace.equal_in);
  const std::uint64_t greater = mask_of(trace.greater_in);

  for_each_blocker(game, pi, [&](std::uint64_t mask) {
    ++report.blockers;
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (!interval.contains(size)) {
      if ((mask & equal) != 0) ++report.equal_hits_outside_interval;
      return;
    }
    ++report.blockers_in_interval;
    if ((mask & equal) != 0 && report.equal_avoided) {
      report.equal_avoided = false;
      report.equal_witness = Coalition::from_mask(n, mask);
    }
    if ((mask & lower) != 0 && (mask & greater) != 0 && report.no_mixing) {
      report.no_mixing = false;
      report.mixing_witness = Coalition::from_mask(n, mask);
    }
  });
  report.count_within_bound = static_cast<double>(report.blockers_in_interval) <= report.count_bound;
  return report;
}

// ---------------------------------------------------------------------------
// Core emptiness

void for_each_set_partition(std::size_t n,
                            const std::function<bool(const std::vector<std::size_t>&, std::size_t)>& visit) {
  std::vector<std::size_t> label(n, 0);
  std::vector<std::size_t> prefix_max(n, 0);  // max(label[0..i-1])
  while (true) {
    std::size_t blocks = n == 0 ? 0 : 1;
    for (std::size_t i = 1; i < n; ++i) blocks = std::max(blocks, label[i] + 1);
    if (!visit(label, blocks)) return;
    if (n < 2) return;
    std::size_t i = n - 1;
    while (i > 0 && label[i] == prefix_max[i] + 1) --i;
    if (i == 0) return;
    ++label[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      label[j] = 0;
      prefix_max[j] = std::max(prefix_max[j - 1], label[j - 1]);
    }
  }
}

Partition partition_from_labels(const std::vector<std::size_t>& labels, std::size_t blocks) {
  std::vector<std::vector<AgentId>> lists(blocks);
  for (AgentId i = 0; i < labels.size(); ++i) lists.at(labels[i]).push_back(i);
  return Partition::from_blocks(labels.size(), lists);
}

std::optional<Partition> find_core_stable(const Game& game) {
  const std::size_t n = agents(game);
  guard(n, partition_enumeration_limit(), "set-partition enumeration");
  std::optional<Partition> found;

  if (const auto* fhg = std::get_if<SimpleFhg>(&game)) {
    FhgView view(*fhg, Partition::singletons(n));
    std::vector<std::uint64_t> block_mask(n);
    std::vector<std::uint64_t> by_label(n);
    for_each_set_partition(n, [&](const std::vector<std::size_t>& label, std::size_t k) {
      std::fill(by_label.begin(), by_label.begin() + static_cast<std::ptrdiff_t>(k), 0);
      for (AgentId i = 0; i < n; ++i) by_label[label[i]] |= std::uint64_t{1} << i;
      for (AgentId i = 0; i < n; ++i) block_mask[i] = by_label[label[i]];
      view.rebase(block_mask);
      if (view.walk(0, std::uint64_t{1} << n, [](std::uint64_t, std::size_t) { return false; })) {
        found = partition_from_labels(label, k);
        return false;
      }
      return true;
    });
    return found;
  }

  const auto& anon = std::get<AnonymousGame>(game);
  // rank[i][s] orders each agent's valuations so comparisons are integer.
  std::vector<double> vals(n * (n + 1), 0.0);
  for (AgentId i = 0; i < n; ++i)
    for (std::size_t s = 1; s <= n; ++s) vals[i * (n + 1) + s] = anon.value_at_size(i, s);
  std::vector<std::size_t> count(n), size_of(n);
  for_each_set_partition(n, [&](const std::vector<std::size_t>& label, std::size_t k) {
    std::fill(count.begin(), count.begin() + static_cast<std::ptrdiff_t>(k), 0);
    for (AgentId i = 0; i < n; ++i) ++count[label[i]];
    for (AgentId i = 0; i < n; ++i) size_of[i] = count[label[i]];
    for (std::size_t s = 1; s <= n; ++s) {
      std::size_t willing = 0;
      for (AgentId i = 0; i < n; ++i)
        if (vals[i * (n + 1) + s] > vals[i * (n + 1) + size_of[i]]) ++willing;
      if (willing >= s) return true;  // blocked; keep looking
    }
    found = partition_from_labels(label, k);
    return false;
  });
  return found;
}

bool certify_empty_core(const Game& game) { return !find_core_stable(game).has_value(); }

// ---------------------------------------------------------------------------
// Decompositions

GreenDecomposition green_decomposition(const Game& game, const Partition& pi, const std::vector<AgentId>& green) {
  const std::size_t n = agents(game);
  const std::uint64_t green_mask = mask_of(green);
  GreenDecomposition d;
  d.total = (std::uint64_t{1} << n) - 1;
  d.missing_green = (std::uint64_t{1} << (n - static_cast<std::size_t>(std::popcount(green_mask)))) - 1;
  for_each_blocker(game, pi, [&](std::uint64_t mask) {
    ++d.blocking;
    if ((mask & green_mask) != 0)
      ++d.blocking_meeting_green;
    else
      ++d.blocking_missing_green;
  });
  return d;
}

AnonGreenBound anonymous_green_bound(const AnonymousGame& game, const Partition& pi, const SizeInterval& interval,
                                     const CoalitionDistribution& dist, double lambda) {
  AnonGreenBound b;
  b.mass = exact_blocking_mass(game, pi, dist);
  const auto pmf = dist.size_pmf();
  long double outside = 0.0L;
  for (std::size_t s = 1; s < pmf.size(); ++s)
    if (!interval.contains(s)) outside += pmf[s];
  b.outside_interval = static_cast<double>(outside);
  b.green = audit_green_anonymous(game.table(), pi, interval).size();
  b.bartlett_term = bartlett_bounds(std::exp2(-static_cast<double>(b.green)), lambda).hi;
  return b;
}

}  // namespace epsfc
