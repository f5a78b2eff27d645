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

#include "epsfc/game.hpp"

#include <algorithm>
#include <sstream>

namespace epsfc {

std::string Coalition::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for_each([&](AgentId a) {
    if (!first) os << ',';
    os << a + 1;
    first = false;
  });
  os << '}';
  return os.str();
}

// ---------------------------------------------------------------------------
// Partition

std::string PartitionCheck::describe() const {
  if (ok) return "ok";
  std::ostringstream os;
  auto list = [&](const char* what, const std::vector<AgentId>& v) {
    if (v.empty()) return;
    os << what << ':';
    for (AgentId a : v) os << ' ' << a + 1;
    os << "; ";
  };
  list("duplicated", duplicated);
  list("missing", missing);
  list("out of range", out_of_range);
  if (empty_blocks > 0) os << "empty blocks: " << empty_blocks << "; ";
  std::string s = os.str();
  if (s.size() >= 2) s.resize(s.size() - 2);
  return s;
}

PartitionCheck validate_partition(const std::vector<std::vector<AgentId>>& blocks, std::size_t n) {
  PartitionCheck check;
  std::vector<std::size_t> seen(n, 0);
  for (const auto& block : blocks) {
    if (block.empty()) ++check.empty_blocks;
    for (AgentId a : block) {
      if (a >= n) {
        check.out_of_range.push_back(a);
        continue;
      }
      if (++seen[a] == 2) check.duplicated.push_back(a);
    }
  }
  for (AgentId a = 0; a < n; ++a)
    if (seen[a] == 0) check.missing.push_back(a);
  std::sort(check.duplicated.begin(), check.duplicated.end());
  check.ok = check.duplicated.empty() && check.missing.empty() && check.out_of_range.empty() &&
             check.empty_blocks == 0;
  return check;
}

Partition Partition::from_blocks(std::size_t n, const std::vector<std::vector<AgentId>>& blocks) {
  PartitionCheck check = validate_partition(blocks, n);
  if (!check.ok) throw InvalidPartition("invalid partition: " + check.describe());
  Partition p;
  p.n_ = n;
  p.assignment_.assign(n, 0);
  p.blocks_.reserve(blocks.size());
  for (const auto& members : blocks) {
    for (AgentId a : members) p.assignment_[a] = p.blocks_.size();
    p.blocks_.push_back(Coalition::from_members(n, members));
  }
  return p;
}

Partition Partition::from_coalitions(std::size_t n, const std::vector<Coalition>& blocks) {
  std::vector<std::vector<AgentId>> lists;
  lists.reserve(blocks.size());
  for (const auto& c : blocks) {
    if (c.universe() != n) throw InvalidPartition("block over a different universe");
    lists.push_back(c.members());
  }
  return from_blocks(n, lists);
}

Partition Partition::singletons(std::size_t n) {
  std::vector<std::vector<AgentId>> blocks(n);
  for (AgentId a = 0; a < n; ++a) blocks[a] = {a};
  return from_blocks(n, blocks);
}

Partition Partition::grand(std::size_t n) {
  std::vector<AgentId> all(n);
  for (AgentId a = 0; a < n; ++a) all[a] = a;
  return from_blocks(n, n == 0 ? std::vector<std::vector<AgentId>>{} : std::vector<std::vector<AgentId>>{all});
}

std::vector<std::vector<AgentId>> Partition::canonical_blocks() const {
  std::vector<std::vector<AgentId>> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) out.push_back(b.members());
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// SimpleFhg

SimpleFhg::SimpleFhg(const std::vector<std::vector<bool>>& adj) : n_(adj.size()) {
  out_.assign(n_, Coalition(n_));
  in_.assign(n_, Coalition(n_));
  for (AgentId i = 0; i < n_; ++i) {
    if (adj[i].size() != n_) throw std::invalid_argument("adjacency matrix is not square");
    if (adj[i][i]) throw std::invalid_argument("adjacency diagonal must be false");
    for (AgentId j = 0; j < n_; ++j) {
      if (adj[i][j]) {
        out_[i].insert(j);
        in_[j].insert(i);
      }
    }
  }
}

SimpleFhg SimpleFhg::empty(std::size_t n) {
  return SimpleFhg(std::vector<std::vector<bool>>(n, std::vector<bool>(n, false)));
}

SimpleFhg SimpleFhg::complete(std::size_t n) {
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, true));
  for (std::size_t i = 0; i < n; ++i) adj[i][i] = false;
  return SimpleFhg(adj);
}

std::vector<std::vector<bool>> SimpleFhg::adjacency() const {
  std::vector<std::vector<bool>> adj(n_, std::vector<bool>(n_, false));
  for (AgentId i = 0; i < n_; ++i) out_[i].for_each([&](AgentId j) { adj[i][j] = true; });
  return adj;
}

// ---------------------------------------------------------------------------
// SizeTable / AnonymousGame

double SizeTable::at(AgentId i, std::size_t s) const {
  std::size_t k = index(i, s);
  if (known_[k] == 0)
    throw UndefinedValuation("valuation of agent " + std::to_string(i + 1) + " for size " + std::to_string(s) +
                             " is unknown");
  return vals_[k];
}

void SizeTable::set(AgentId i, std::size_t s, double v) {
  std::size_t k = index(i, s);
  vals_[k] = v;
  known_[k] = 1;
}

bool SizeTable::known_for_all(std::size_t s) const {
  for (AgentId i = 0; i < n_; ++i)
    if (!known(i, s)) return false;
  return true;
}

bool SizeTable::complete() const {
  return std::all_of(known_.begin(), known_.end(), [](std::uint8_t k) { return k != 0; });
}

AnonymousGame::AnonymousGame(const std::vector<std::vector<double>>& vals) : table_(vals.size()) {
  const std::size_t n = vals.size();
  for (AgentId i = 0; i < n; ++i) {
    if (vals[i].size() != n) throw std::invalid_argument("anonymous valuation table must be n x n");
    for (std::size_t s = 1; s <= n; ++s) table_.set(i, s, vals[i][s - 1]);
  }
}

AnonymousGame::AnonymousGame(SizeTable table) : table_(std::move(table)) {
  if (!table_.complete()) throw std::invalid_argument("anonymous game needs a fully populated table");
}

std::vector<std::vector<double>> AnonymousGame::rows() const {
  const std::size_t n = agents();
  std::vector<std::vector<double>> out(n, std::vector<double>(n));
  for (AgentId i = 0; i < n; ++i)
    for (std::size_t s = 1; s <= n; ++s) out[i][s - 1] = table_.at(i, s);
  return out;
}

std::size_t agents(const Game& game) {
  return std::visit([](const auto& g) { return g.agents(); }, game);
}

// ---------------------------------------------------------------------------
// Valuations

Fraction value(const SimpleFhg& game, AgentId i, const Coalition& s) {
  if (!s.contains(i)) throw UndefinedValuation("agent " + std::to_string(i + 1) + " is not in " + s.to_string());
  return Fraction(static_cast<std::int64_t>(s.intersection_size(game.out_neighbours(i))),
                  static_cast<std::int64_t>(s.size()));
}

double value(const AnonymousGame& game, AgentId i, const Coalition& s) {
  if (!s.contains(i)) throw UndefinedValuation("agent " + std::to_string(i + 1) + " is not in " + s.to_string());
  return game.value_at_size(i, s.size());
}

bool blocks(const SimpleFhg& game, const Coalition& s, const Partition& pi) {
  if (s.empty()) return false;
  bool all = true;
  s.for_each([&](AgentId i) {
    if (!all) return;
    const Coalition& current = pi.block_of(i);
    // k/|S| > c/|pi(i)|  <=>  k |pi(i)| > c |S|
    auto k = static_cast<std::int64_t>(s.intersection_size(game.out_neighbours(i)));
    auto c = static_cast<std::int64_t>(current.intersection_size(game.out_neighbours(i)));
    if (k * static_cast<std::int64_t>(current.size()) <= c * static_cast<std::int64_t>(s.size())) all = false;
  });
  return all;
}

bool blocks(const AnonymousGame& game, const Coalition& s, const Partition& pi) {
  if (s.empty()) return false;
  bool all = true;
  s.for_each([&](AgentId i) {
    if (all && !(game.value_at_size(i, s.size()) > game.value_at_size(i, pi.block_size(i)))) all = false;
  });
  return all;
}

bool blocks(const Game& game, const Coalition& s, const Partition& pi) {
  return std::visit([&](const auto& g) { return blocks(g, s, pi); }, game);
}

bool is_individually_rational(const SimpleFhg& game, const Partition& pi) {
  for (AgentId i = 0; i < game.agents(); ++i)
    if (blocks(game, Coalition(game.agents(), {i}), pi)) return false;
  return true;
}

bool is_individually_rational(const AnonymousGame& game, const Partition& pi) {
  for (AgentId i = 0; i < game.agents(); ++i)
    if (game.value_at_size(i, 1) > game.value_at_size(i, pi.block_size(i))) return false;
  return true;
}

bool is_individually_rational(const Game& game, const Partition& pi) {
  return std::visit([&](const auto& g) { return is_individually_rational(g, pi); }, game);
}

// ---------------------------------------------------------------------------
// Single-peakedness

std::vector<std::size_t> SinglePeakedCertificate::positions() const {
  std::vector<std::size_t> pos(ordering.size() + 1, 0);
  for (std::size_t k = 0; k < ordering.size(); ++k) pos[ordering[k]] = k;
  return pos;
}

std::vector<std::size_t> natural_ordering(std::size_t n) {
  std::vector<std::size_t> ord(n);
  for (std::size_t k = 0; k < n; ++k) ord[k] = k + 1;
  return ord;
}

SinglePeakResult check_single_peaked(const AnonymousGame& game, const std::vector<std::size_t>& ordering) {
  const std::size_t n = game.agents();
  if (ordering.size() != n) throw std::invalid_argument("ordering must list every size 1..n");
  std::vector<bool> seen(n + 1, false);
  for (std::size_t s : ordering) {
    if (s == 0 || s > n || seen[s]) throw std::invalid_argument("ordering is not a permutation of 1..n");
    seen[s] = true;
  }

  SinglePeakedCertificate cert;
  cert.ordering = ordering;
  cert.peaks.resize(n);
  for (AgentId i = 0; i < n; ++i) {
    // The first maximum along the ordering is a valid peak whenever any is.
    std::size_t peak = 0;
    for (std::size_t k = 1; k < n; ++k)
      if (game.value_at_size(i, ordering[k]) > game.value_at_size(i, ordering[peak])) peak = k;
    for (std::size_t k = 1; k <= peak; ++k) {
      if (game.value_at_size(i, ordering[k]) < game.value_at_size(i, ordering[k - 1]))
        return SinglePeakViolation{i, ordering[k], ordering[k - 1]};
    }
    for (std::size_t k = peak + 1; k < n; ++k) {
      if (game.value_at_size(i, ordering[k]) > game.value_at_size(i, ordering[k - 1]))
        return SinglePeakViolation{i, ordering[k - 1], ordering[k]};
    }
    cert.peaks[i] = ordering[peak];
  }
  return cert;
}

}  // namespace epsfc
