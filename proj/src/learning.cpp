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

#include "epsfc/learning.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace epsfc {
namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

/// ceil() that ignores rounding noise just above an integer.
std::size_t ceil_count(double x) {
  if (!(x > 0.0)) return 0;
  double c = std::ceil(x - 1e-9 * std::max(1.0, x));
  return static_cast<std::size_t>(std::max(0.0, c));
}

/// Valuation reported by `i` scaled by |S|: the number of out-neighbours of
/// i in S, which must be an integer in [0, |S| - 1].
long long neighbour_count(double v, std::size_t size, AgentId i, const Coalition& s) {
  const double scaled = v * static_cast<double>(size);
  const double k = std::round(scaled);
  if (std::abs(scaled - k) > 1e-6 || k < 0.0 || k > static_cast<double>(size) - 1.0)
    throw InconsistentSamples("value " + std::to_string(v) + " of agent " + std::to_string(i + 1) + " in " +
                              s.to_string() + " is not a fraction k/|S| of a simple fractional game");
  return static_cast<long long>(k);
}

}  // namespace

void SampleRecord::validate() const {
  if (coalition.empty()) throw std::invalid_argument("sample coalition is empty");
  if (member_values.size() != coalition.size())
    throw std::invalid_argument("sample " + coalition.to_string() + " must carry exactly one value per member");
  for (const auto& [agent, v] : member_values)
    if (!coalition.contains(agent))
      throw std::invalid_argument("sample " + coalition.to_string() + " has a value for non-member " +
                                  std::to_string(agent + 1));
}

std::vector<SampleRecord> draw_samples(const Game& game, const CoalitionDistribution& dist, std::size_t m, Rng& rng) {
  if (dist.agents() != agents(game)) throw std::invalid_argument("distribution and game disagree on n");
  std::vector<SampleRecord> out;
  out.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    SampleRecord rec{dist.sample(rng), {}};
    rec.coalition.for_each([&](AgentId i) {
      rec.member_values[i] = std::visit(
          [&](const auto& g) -> double {
            if constexpr (std::is_same_v<std::decay_t<decltype(g)>, SimpleFhg>)
              return boost::rational_cast<double>(value(g, i, rec.coalition));
            else
              return value(g, i, rec.coalition);
          },
          game);
    });
    out.push_back(std::move(rec));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact integer elimination

IntegerSystemSolution solve_integer_system(const std::vector<std::vector<int>>& a, const std::vector<long long>& b,
                                           std::size_t columns) {
  if (a.size() != b.size()) throw std::invalid_argument("system rows and right-hand side differ in length");
  const std::size_t rows = a.size();
  std::vector<std::vector<cpp_int>> m(rows, std::vector<cpp_int>(columns + 1));
  for (std::size_t r = 0; r < rows; ++r) {
    if (a[r].size() != columns) throw std::invalid_argument("ragged system matrix");
    for (std::size_t c = 0; c < columns; ++c) m[r][c] = a[r][c];
    m[r][columns] = b[r];
  }

  IntegerSystemSolution sol;
  std::vector<std::size_t> pivot_cols;
  cpp_int prev = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < columns && row < rows; ++col) {
    std::size_t p = row;
    while (p < rows && m[p][col] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[row]);
    for (std::size_t i = row + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j <= columns; ++j)
        m[i][j] = (m[row][col] * m[i][j] - m[i][col] * m[row][j]) / prev;
      m[i][col] = 0;
    }
    prev = m[row][col];
    pivot_cols.push_back(col);
    ++row;
  }
  sol.rank = row;
  for (std::size_t r = row; r < rows; ++r)
    if (m[r][columns] != 0) sol.consistent = false;
  if (!sol.consistent || sol.rank < columns) return sol;

  sol.values.assign(columns, cpp_rational(0));
  for (std::size_t k = sol.rank; k-- > 0;) {
    const std::size_t col = pivot_cols[k];
    cpp_rational acc(m[k][columns]);
    for (std::size_t j = col + 1; j < columns; ++j)
      if (m[k][j] != 0) acc -= cpp_rational(m[k][j]) * sol.values[j];
    sol.values[col] = acc / cpp_rational(m[k][col]);
  }
  return sol;
}

// ---------------------------------------------------------------------------
// Simple fractional games

std::size_t fhg_sample_size(std::size_t n, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  return ceil_count(16.0 * std::log(static_cast<double>(n) / delta)) + 4 * n;
}

std::vector<AgentId> FhgLearnResult::failed_agents() const {
  std::vector<AgentId> out;
  for (AgentId i = 0; i < status.size(); ++i)
    if (status[i] != AgentLearnStatus::kLearned) out.push_back(i);
  return out;
}

FhgLearnResult learn_fhg(std::size_t n, const std::vector<SampleRecord>& samples) {
  FhgLearnResult result;
  result.status.assign(n, AgentLearnStatus::kLearned);
  result.rank.assign(n, 0);
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));

  for (const auto& rec : samples) {
    if (rec.coalition.universe() != n) throw std::invalid_argument("sample over a different number of agents");
    rec.validate();
  }

  for (AgentId i = 0; i < n; ++i) {
    // Unknowns: v_i({j}) for j != i, in increasing j.
    std::vector<std::vector<int>> rows;
    std::vector<long long> rhs;
    for (const auto& rec : samples) {
      if (!rec.coalition.contains(i)) continue;
      std::vector<int> row;
      row.reserve(n - 1);
      for (AgentId j = 0; j < n; ++j)
        if (j != i) row.push_back(rec.coalition.contains(j) ? 1 : 0);
      rows.push_back(std::move(row));
      rhs.push_back(neighbour_count(rec.member_values.at(i), rec.coalition.size(), i, rec.coalition));
    }
    if (n == 1) continue;
    if (rows.empty()) {
      result.status[i] = AgentLearnStatus::kNoSamples;
      continue;
    }
    IntegerSystemSolution sol = solve_integer_system(rows, rhs, n - 1);
    result.rank[i] = sol.rank;
    if (!sol.consistent)
      throw InconsistentSamples("samples for agent " + std::to_string(i + 1) + " admit no solution");
    if (sol.rank < n - 1) {
      result.status[i] = AgentLearnStatus::kRankDeficient;
      continue;
    }
    std::size_t k = 0;
    for (AgentId j = 0; j < n; ++j) {
      if (j == i) continue;
      const cpp_rational& x = sol.values[k++];
      if (x == 1)
        adj[i][j] = true;
      else if (x != 0)
        throw InconsistentSamples("agent " + std::to_string(i + 1) + " values agent " + std::to_string(j + 1) +
                                  " at " + x.str() + ", not 0 or 1");
    }
  }

  if (result.failed_agents().empty()) result.game = SimpleFhg(adj);
  return result;
}

// ---------------------------------------------------------------------------
// Anonymous games

std::size_t anon_sample_size(std::size_t n, double delta, double eps, double lambda) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  if (!(lambda >= 1.0)) throw std::invalid_argument("lambda must be >= 1");
  const double nd = static_cast<double>(n);
  return ceil_count(2.0 * lambda * (1.0 + lambda) * nd * nd * std::log(nd * nd / delta) / eps);
}

std::size_t mean_confidence_m(std::size_t n, double alpha, double delta) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  const double nd = static_cast<double>(n);
  return ceil_count(nd * nd * std::log(2.0 / delta) / (2.0 * alpha * alpha));
}

double LearnedAnonymous::mu_hat() const {
  if (!mean_size) throw std::logic_error("mean coalition size is undefined without samples");
  return *mean_size;
}

std::vector<std::size_t> LearnedAnonymous::learned_sizes() const {
  std::vector<std::size_t> out;
  for (std::size_t s = 1; s <= table.agents(); ++s)
    if (table.known_for_all(s)) out.push_back(s);
  return out;
}

LearnedAnonymous learn_anonymous(std::size_t n, const std::vector<SampleRecord>& samples) {
  LearnedAnonymous learned{SizeTable(n), samples.size(), std::nullopt};
  long double total = 0.0L;
  for (const auto& rec : samples) {
    if (rec.coalition.universe() != n) throw std::invalid_argument("sample over a different number of agents");
    rec.validate();
    const std::size_t s = rec.coalition.size();
    total += static_cast<long double>(s);
    for (const auto& [i, v] : rec.member_values) {
      if (learned.table.known(i, s)) {
        if (learned.table.at(i, s) != v)
          throw InconsistentSamples("agent " + std::to_string(i + 1) + " reported two values for size " +
                                    std::to_string(s));
      } else {
        learned.table.set(i, s, v);
      }
    }
  }
  if (!samples.empty()) learned.mean_size = static_cast<double>(total / static_cast<long double>(samples.size()));
  return learned;
}

double default_alpha(std::size_t n, double lambda) {
  const double nd = static_cast<double>(n);
  return std::min(1.0 / (2.0 * std::sqrt(nd)), nd / (lambda + 1.0));
}

SizeInterval estimate_interval(const LearnedAnonymous& learned, double lambda, double eps, double alpha) {
  const std::size_t n = learned.agents();
  const double mu = learned.mu_hat();
  const double delta = size_window_delta(lambda, eps, n);
  const double ends[] = {(1.0 - delta) * (mu - alpha), (1.0 - delta) * (mu + alpha), (1.0 + delta) * (mu - alpha),
                         (1.0 + delta) * (mu + alpha)};
  SizeInterval iv;
  iv.lo = *std::min_element(std::begin(ends), std::end(ends));
  iv.hi = *std::max_element(std::begin(ends), std::end(ends));
  for (std::size_t s : sizes_strictly_between(iv.lo, iv.hi, n))
    if (learned.table.known_for_all(s)) iv.sizes.push_back(s);
  if (iv.sizes.empty())
    throw EmptyInterval("no size in (" + std::to_string(iv.lo) + ", " + std::to_string(iv.hi) +
                        ") is learned for every agent");
  return iv;
}

}  // namespace epsfc
