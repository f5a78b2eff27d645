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

#ifndef EPSFC_COALITION_HPP
#define EPSFC_COALITION_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace epsfc {

/// Zero-based agent index. File formats use 1-based indices.
using AgentId = std::size_t;

/// Set of agents drawn from a universe of n agents, stored as a bitset.
///
/// Universes with n <= 64 occupy a single inline machine word; larger
/// universes spill into a word array. The cardinality is cached.
class Coalition {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  Coalition() = default;

  /// Empty coalition over a universe of `n` agents.
  explicit Coalition(std::size_t n) : n_(n), words_(word_count(n), 0) {}

  Coalition(std::size_t n, std::initializer_list<AgentId> members)
      : Coalition(n) {
    for (AgentId a : members) insert(a);
  }

  static Coalition from_members(std::size_t n, std::span<const AgentId> members) {
    Coalition c(n);
    for (AgentId a : members) c.insert(a);
    return c;
  }

  /// Requires n <= 64; bits of `mask` at positions >= n must be clear.
  static Coalition from_mask(std::size_t n, Word mask) {
    if (n > kWordBits) throw std::invalid_argument("from_mask: n > 64");
    if (n < kWordBits && (mask >> n) != 0)
      throw std::invalid_argument("from_mask: bits outside universe");
    Coalition c(n);
    if (n > 0) c.words_[0] = mask;
    c.size_ = static_cast<std::size_t>(std::popcount(mask));
    return c;
  }

  static Coalition full(std::size_t n) {
    Coalition c(n);
    for (std::size_t w = 0; w < c.words_.size(); ++w) {
      std::size_t bits = std::min(kWordBits, n - w * kWordBits);
      c.words_[w] = bits == kWordBits ? ~Word{0} : ((Word{1} << bits) - 1);
    }
    c.size_ = n;
    return c;
  }

  std::size_t universe() const { return n_; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool contains(AgentId a) const {
    return a < n_ && ((words_[a / kWordBits] >> (a % kWordBits)) & 1U) != 0;
  }

  void insert(AgentId a) {
    check(a);
    Word& w = words_[a / kWordBits];
    Word bit = Word{1} << (a % kWordBits);
    if ((w & bit) == 0) {
      w |= bit;
      ++size_;
    }
  }

  void erase(AgentId a) {
    check(a);
    Word& w = words_[a / kWordBits];
    Word bit = Word{1} << (a % kWordBits);
    if ((w & bit) != 0) {
      w &= ~bit;
      --size_;
    }
  }

  /// Single-word view; only valid for universes of at most 64 agents.
  Word mask() const {
    if (n_ > kWordBits) throw std::logic_error("Coalition::mask: n > 64");
    return words_.empty() ? 0 : words_[0];
  }

  std::span<const Word> words() const { return {words_.data(), words_.size()}; }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits != 0) {
        f(static_cast<AgentId>(w * kWordBits + std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  std::vector<AgentId> members() const {
    std::vector<AgentId> out;
    out.reserve(size_);
    for_each([&](AgentId a) { out.push_back(a); });
    return out;
  }

  std::size_t intersection_size(const Coalition& other) const {
    same_universe(other);
    std::size_t k = 0;
    for (std::size_t w = 0; w < words_.size(); ++w)
      k += static_cast<std::size_t>(std::popcount(words_[w] & other.words_[w]));
    return k;
  }

  bool intersects(const Coalition& other) const {
    same_universe(other);
    for (std::size_t w = 0; w < words_.size(); ++w)
      if ((words_[w] & other.words_[w]) != 0) return true;
    return false;
  }

  bool is_subset_of(const Coalition& other) const {
    same_universe(other);
    for (std::size_t w = 0; w < words_.size(); ++w)
      if ((words_[w] & ~other.words_[w]) != 0) return false;
    return true;
  }

  Coalition& operator|=(const Coalition& other) {
    same_universe(other);
    size_ = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      words_[w] |= other.words_[w];
      size_ += static_cast<std::size_t>(std::popcount(words_[w]));
    }
    return *this;
  }

  Coalition& operator&=(const Coalition& other) {
    same_universe(other);
    size_ = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      words_[w] &= other.words_[w];
      size_ += static_cast<std::size_t>(std::popcount(words_[w]));
    }
    return *this;
  }

  /// Complement within the universe.
  Coalition complement() const {
    Coalition c = full(n_);
    for (std::size_t w = 0; w < words_.size(); ++w) c.words_[w] &= ~words_[w];
    c.size_ = n_ - size_;
    return c;
  }

  friend Coalition operator|(Coalition a, const Coalition& b) { return a |= b; }
  friend Coalition operator&(Coalition a, const Coalition& b) { return a &= b; }

  friend bool operator==(const Coalition& a, const Coalition& b) {
    return a.n_ == b.n_ && std::equal(a.words_.begin(), a.words_.end(), b.words_.begin());
  }

  /// Total order: by universe, then by words from most significant.
  friend bool operator<(const Coalition& a, const Coalition& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    for (std::size_t w = a.words_.size(); w-- > 0;)
      if (a.words_[w] != b.words_[w]) return a.words_[w] < b.words_[w];
    return false;
  }

  std::size_t hash() const {
    std::size_t h = std::hash<std::size_t>{}(n_);
    for (Word w : words_) h ^= std::hash<Word>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

  /// "{1,3,4}" with 1-based agent labels.
  std::string to_string() const;

 private:
  static std::size_t word_count(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

  void check(AgentId a) const {
    if (a >= n_) throw std::out_of_range("agent " + std::to_string(a) + " outside universe of " + std::to_string(n_));
  }

  void same_universe(const Coalition& other) const {
    if (other.n_ != n_) throw std::invalid_argument("coalitions over different universes");
  }

  std::size_t n_ = 0;
  std::size_t size_ = 0;
  boost::container::small_vector<Word, 1> words_;
};

struct CoalitionHash {
  std::size_t operator()(const Coalition& c) const { return c.hash(); }
};

}  // namespace epsfc

#endif  // EPSFC_COALITION_HPP
