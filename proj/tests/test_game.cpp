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


#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "epsfc/game.hpp"
#include "epsfc/instances.hpp"
#include "support.hpp"

using namespace epsfc;

namespace {

SimpleFhg pair_game() { return SimpleFhg({{false, true}, {true, false}}); }

}  // namespace

TEST_CASE("coalition basics") {
  Coalition c(70, {0, 3, 69});
  CHECK(c.size() == 3);
  CHECK(c.contains(69));
  CHECK_FALSE(c.contains(68));
  c.erase(3);
  CHECK(c.members() == std::vector<AgentId>{0, 69});
  CHECK(c.complement().size() == 68);
  CHECK(c.to_string() == "{1,70}");
  CHECK_THROWS(c.insert(70));
  const Coalition m = Coalition::from_mask(5, 0b10110);
  CHECK(m.members() == std::vector<AgentId>{1, 2, 4});
  CHECK(m.mask() == 0b10110);
}

TEST_CASE("fhg value") {
  const auto g = pair_game();
  CHECK(value(g, 0, Coalition(2, {0, 1})) == Fraction(1, 2));
  CHECK(value(g, 1, Coalition(2, {1})) == Fraction(0));
  CHECK_THROWS_AS(value(g, 0, Coalition(2, {1})), UndefinedValuation);
}

TEST_CASE("fhg value range property") {
  const auto g = random_fhg(9, 0.4, 5);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 300; ++t) {
    const std::uint64_t mask = 1 + rng() % 511;
    const Coalition s = Coalition::from_mask(9, mask);
    s.for_each([&](AgentId i) {
      const Fraction v = value(g, i, s);
      CHECK(v >= Fraction(0));
      CHECK(v <= Fraction(static_cast<std::int64_t>(s.size()) - 1, static_cast<std::int64_t>(s.size())));
      CHECK((v == Fraction(0)) == (s.intersection_size(g.out_neighbours(i)) == 0));
    });
  }
}

TEST_CASE("anonymous value") {
  std::vector<std::vector<double>> vals(4, std::vector<double>(4, 0.0));
  vals[2][1] = 0.7;  // agent 3, size 2
  const AnonymousGame g(vals);
  CHECK(value(g, 2, Coalition(4, {0, 2})) == 0.7);
  CHECK(value(g, 2, Coalition(4, {2, 3})) == 0.7);
  CHECK_THROWS_AS(value(g, 2, Coalition(4, {0})), UndefinedValuation);
}

TEST_CASE("blocks examples") {
  const auto g = pair_game();
  CHECK(blocks(g, Coalition(2, {0, 1}), Partition::singletons(2)));
  const auto pi = Partition::from_blocks(2, {{0, 1}});
  CHECK_FALSE(blocks(g, pi.block(0), pi));

  std::vector<std::vector<double>> vals(3, {1.0, 0.0, 0.0});
  const AnonymousGame a(vals);
  CHECK(blocks(a, Coalition(3, {0}), Partition::grand(3)));
}

TEST_CASE("blocks equals per-member re-evaluation") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    const auto g = random_fhg(8, 0.5, rng());
    const auto adj = support::adj_of(g);
    oracle::Labels labels(8);
    for (auto& l : labels) l = static_cast<int>(rng() % 3);
    const auto pi = support::partition_of(labels);
    const auto canon = support::labels_of(pi);
    for (std::uint64_t m = 1; m < 256; ++m)
      CHECK(blocks(g, Coalition::from_mask(8, m), pi) == oracle::fhg_blocks(adj, oracle::members(m, 8), canon));
  }
}

TEST_CASE("individual rationality") {
  const auto g = random_fhg(7, 0.3, 2);
  CHECK(is_individually_rational(g, Partition::grand(7)));
  CHECK(is_individually_rational(g, Partition::singletons(7)));

  std::vector<std::vector<double>> vals(3, {0.0, 0.5, 0.2});
  vals[1] = {1.0, 0.5, 0.2};
  const AnonymousGame a(vals);
  CHECK_FALSE(is_individually_rational(a, Partition::from_blocks(3, {{0, 1}, {2}})));
  CHECK(is_individually_rational(a, Partition::singletons(3)));
}

TEST_CASE("validate_partition") {
  CHECK(validate_partition({{0, 1}, {2}}, 3).ok);
  const auto dup = validate_partition({{0, 1}, {1, 2}}, 3);
  CHECK_FALSE(dup.ok);
  CHECK(dup.duplicated == std::vector<AgentId>{1});
  const auto miss = validate_partition({{0}}, 2);
  CHECK_FALSE(miss.ok);
  CHECK(miss.missing == std::vector<AgentId>{1});
  CHECK_FALSE(validate_partition({{0, 5}, {1}}, 2).ok);
  CHECK_FALSE(validate_partition({{0, 1}, {}}, 2).ok);
  CHECK_THROWS_AS(Partition::from_blocks(3, {{0, 1}, {1, 2}}), InvalidPartition);
}

TEST_CASE("validate_partition accepts exactly the disjoint covers") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + rng() % 7;
    std::vector<std::vector<AgentId>> blocks(1 + rng() % 4);
    for (AgentId i = 0; i < n; ++i) blocks[rng() % blocks.size()].push_back(i);
    const int corruption = static_cast<int>(rng() % 4);
    if (corruption == 1) blocks[rng() % blocks.size()].push_back(rng() % n);
    if (corruption == 2 && n > 1) {
      auto& b = blocks[rng() % blocks.size()];
      if (!b.empty()) b.pop_back();
    }
    // Independent cover test.
    std::vector<int> seen(n, 0);
    bool cover = true;
    for (const auto& b : blocks) {
      if (b.empty()) cover = false;
      for (AgentId a : b) ++seen[a];
    }
    for (int s : seen) cover = cover && s == 1;
    CHECK(validate_partition(blocks, n).ok == cover);
  }
}

TEST_CASE("check_single_peaked") {
  const std::size_t n = 5;
  std::vector<std::vector<double>> tent(n, std::vector<double>(n));
  for (auto& row : tent)
    for (std::size_t s = 1; s <= n; ++s) row[s - 1] = -std::abs(static_cast<double>(s) - 3.0);
  auto r = check_single_peaked(AnonymousGame(tent), natural_ordering(n));
  REQUIRE(std::holds_alternative<SinglePeakedCertificate>(r));
  CHECK(std::get<SinglePeakedCertificate>(r).peaks == std::vector<std::size_t>(n, 3));

  std::vector<std::vector<double>> rising(n, {1, 2, 3, 4, 5});
  r = check_single_peaked(AnonymousGame(rising), natural_ordering(n));
  REQUIRE(std::holds_alternative<SinglePeakedCertificate>(r));
  CHECK(std::get<SinglePeakedCertificate>(r).peaks == std::vector<std::size_t>(n, n));

  std::vector<std::vector<double>> twin(3, {1, 0, 1});
  r = check_single_peaked(AnonymousGame(twin), natural_ordering(3));
  REQUIRE(std::holds_alternative<SinglePeakViolation>(r));
  const auto v = std::get<SinglePeakViolation>(r);
  CHECK(v.better == 2);
  CHECK((v.worse == 3 || v.worse == 1));

  CHECK_THROWS(check_single_peaked(AnonymousGame(twin), {1, 1, 2}));
}

TEST_CASE("check_single_peaked accepts unimodal and rejects two-peaked tables") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 3 + rng() % 8;
    std::vector<std::size_t> ordering(n);
    std::iota(ordering.begin(), ordering.end(), std::size_t{1});
    std::shuffle(ordering.begin(), ordering.end(), rng);
    const std::size_t peak_pos = rng() % n;
    std::vector<std::vector<double>> vals(1, std::vector<double>(n));
    vals[0][ordering[peak_pos] - 1] = 0.0;
    double level = 0.0;
    for (std::size_t k = peak_pos; k-- > 0;) {
      level -= static_cast<double>(rng() % 3);
      vals[0][ordering[k] - 1] = level;
    }
    level = 0.0;
    for (std::size_t k = peak_pos + 1; k < n; ++k) {
      level -= static_cast<double>(rng() % 3);
      vals[0][ordering[k] - 1] = level;
    }
    // pad to an n-agent game by repeating the row
    vals.resize(n, vals[0]);
    CHECK(std::holds_alternative<SinglePeakedCertificate>(check_single_peaked(AnonymousGame(vals), ordering)));

    // two strict local maxima at positions 0 and n-1
    std::vector<std::vector<double>> two(n, std::vector<double>(n, 0.0));
    for (auto& row : two) {
      row[ordering.front() - 1] = 2.0;
      row[ordering.back() - 1] = 3.0;
    }
    CHECK(std::holds_alternative<SinglePeakViolation>(check_single_peaked(AnonymousGame(two), ordering)));
  }
}

TEST_CASE("size table") {
  SizeTable t(3);
  CHECK_FALSE(t.known(0, 2));
  CHECK_THROWS_AS(t.at(0, 2), UndefinedValuation);
  t.set(0, 2, 0.5);
  CHECK(t.at(0, 2) == 0.5);
  CHECK_FALSE(t.known_for_all(2));
  t.set(1, 2, 0.1);
  t.set(2, 2, 0.2);
  CHECK(t.known_for_all(2));
  CHECK_THROWS(AnonymousGame(t));
}
