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

// Game models: simple fractional hedonic games (unweighted digraph,
// utility = fraction of own coalition that are out-neighbours) and anonymous
// hedonic games (utility depends only on coalition size), together with the
// core-blocking predicate they share.

#ifndef EPSFC_GAME_HPP
#define EPSFC_GAME_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "epsfc/coalition.hpp"

namespace epsfc {

/// Exact utility in a simple fractional game: |S ∩ N_i| / |S|.
using Fraction = boost::rational<std::int64_t>;

/// Raised when a valuation is requested for an agent outside the coalition.
class UndefinedValuation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidPartition : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Partition

struct PartitionCheck {
  bool ok = true;
  std::vector<AgentId> duplicated;
  std::vector<AgentId> missing;
  std::vector<AgentId> out_of_range;
  std::size_t empty_blocks = 0;

  std::string describe() const;
};

/// Checks that `blocks` is a disjoint cover of {0, ..., n-1} by non-empty sets.
PartitionCheck validate_partition(const std::vector<std::vector<AgentId>>& blocks, std::size_t n);

/// Coalition structure with constant-time agent -> block lookup.
class Partition {
 public:
  Partition() = default;

  /// Throws InvalidPartition unless the blocks form a disjoint cover.
  static Partition from_blocks(std::size_t n, const std::vector<std::vector<AgentId>>& blocks);
  static Partition from_coalitions(std::size_t n, const std::vector<Coalition>& blocks);
  static Partition singletons(std::size_t n);
  static Partition grand(std::size_t n);

  std::size_t universe() const { return n_; }
  std::size_t block_count() const { return blocks_.size(); }
  const std::vector<Coalition>& blocks() const { return blocks_; }
  const Coalition& block(std::size_t b) const { return blocks_.at(b); }
  std::size_t block_index(AgentId a) const { return assignment_.at(a); }
  const Coalition& block_of(AgentId a) const { return blocks_[assignment_.at(a)]; }
  std::size_t block_size(AgentId a) const { return block_of(a).size(); }

  /// Blocks as sorted member lists, ordered by smallest member.
  std::vector<std::vector<AgentId>> canonical_blocks() const;

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.canonical_blocks() == b.canonical_blocks();
  }

 private:
  std::size_t n_ = 0;
  std::vector<Coalition> blocks_;
  std::vector<std::size_t> assignment_;
};

// ---------------------------------------------------------------------------
// Simple fractional hedonic game

class SimpleFhg {
 public:
  SimpleFhg() = default;

  /// `adj[i][j]` is true when i values j at 1. The diagonal must be false.
  explicit SimpleFhg(const std::vector<std::vector<bool>>& adj);

  static SimpleFhg empty(std::size_t n);
  static SimpleFhg complete(std::size_t n);

  std::size_t agents() const { return n_; }
  bool arc(AgentId i, AgentId j) const { return out_[i].contains(j); }
  const Coalition& out_neighbours(AgentId i) const { return out_.at(i); }
  const Coalition& in_neighbours(AgentId j) const { return in_.at(j); }
  std::size_t out_degree(AgentId i) const { return out_.at(i).size(); }

  std::vector<std::vector<bool>> adjacency() const;

  friend bool operator==(const SimpleFhg& a, const SimpleFhg& b) {
    return a.n_ == b.n_ && a.out_ == b.out_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Coalition> out_;
  std::vector<Coalition> in_;
};

// ---------------------------------------------------------------------------
// Size-indexed valuation tables

/// Per-agent valuation by coalition size, possibly only partially known.
/// Sizes are 1-based: `at(i, s)` is v_i(s) for s in [1, n].
class SizeTable {
 public:
  SizeTable() = default;
  explicit SizeTable(std::size_t n) : n_(n), vals_(n * n, 0.0), known_(n * n, 0) {}

  std::size_t agents() const { return n_; }

  bool known(AgentId i, std::size_t s) const { return known_[index(i, s)] != 0; }
  double at(AgentId i, std::size_t s) const;
  void set(AgentId i, std::size_t s, double v);

  /// True when every agent's value at size `s` is known.
  bool known_for_all(std::size_t s) const;
  bool complete() const;

  friend bool operator==(const SizeTable&, const SizeTable&) = default;

 private:
  std::size_t index(AgentId i, std::size_t s) const {
    if (i >= n_ || s == 0 || s > n_)
      throw std::out_of_range("size table index (" + std::to_string(i) + ", " + std::to_string(s) + ")");
    return i * n_ + (s - 1);
  }

  std::size_t n_ = 0;
  std::vector<double> vals_;
  std::vector<std::uint8_t> known_;
};

/// Anonymous hedonic game: a fully populated size table.
class AnonymousGame {
 public:
  AnonymousGame() = default;
  /// `vals[i][s-1]` = v_i(s). Every row must have exactly n entries.
  explicit AnonymousGame(const std::vector<std::vector<double>>& vals);
  explicit AnonymousGame(SizeTable table);

  std::size_t agents() const { return table_.agents(); }
  double value_at_size(AgentId i, std::size_t s) const { return table_.at(i, s); }
  const SizeTable& table() const { return table_; }
  std::vector<std::vector<double>> rows() const;

  friend bool operator==(const AnonymousGame&, const AnonymousGame&) = default;

 private:
  SizeTable table_;
};

using Game = std::variant<SimpleFhg, AnonymousGame>;

std::size_t agents(const Game& game);

// ---------------------------------------------------------------------------
// Valuations and blocking

/// v_i(S) = |S ∩ N_i| / |S|. Throws UndefinedValuation if i is not in S.
Fraction value(const SimpleFhg& game, AgentId i, const Coalition& s);
/// v_i(|S|). Throws UndefinedValuation if i is not in S.
double value(const AnonymousGame& game, AgentId i, const Coalition& s);

/// True iff every member of `s` strictly prefers `s` to its block in `pi`.
bool blocks(const SimpleFhg& game, const Coalition& s, const Partition& pi);
bool blocks(const AnonymousGame& game, const Coalition& s, const Partition& pi);
bool blocks(const Game& game, const Coalition& s, const Partition& pi);

/// True iff no agent strictly prefers being alone.
bool is_individually_rational(const SimpleFhg& game, const Partition& pi);
bool is_individually_rational(const AnonymousGame& game, const Partition& pi);
bool is_individually_rational(const Game& game, const Partition& pi);

// ---------------------------------------------------------------------------
// Single-peakedness

struct SinglePeakedCertificate {
  /// Permutation of the sizes 1..n.
  std::vector<std::size_t> ordering;
  /// Peak size of each agent (1-based size).
  std::vector<std::size_t> peaks;

  /// Position of each size in `ordering` (index by size; slot 0 unused).
  std::vector<std::size_t> positions() const;
};

/// A violation of unimodality: along the ordering, `agent` values
/// size `worse` strictly above size `better` although `better` lies between
/// `worse` and the agent's peak.
struct SinglePeakViolation {
  AgentId agent = 0;
  std::size_t better = 0;
  std::size_t worse = 0;
};

using SinglePeakResult = std::variant<SinglePeakedCertificate, SinglePeakViolation>;

/// `ordering` must be a permutation of 1..n; throws std::invalid_argument otherwise.
SinglePeakResult check_single_peaked(const AnonymousGame& game, const std::vector<std::size_t>& ordering);

std::vector<std::size_t> natural_ordering(std::size_t n);

}  // namespace epsfc

#endif  // EPSFC_GAME_HPP
