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


// JSON encodings of games, partitions, distributions, samples, traces and
// reports. Agents are 1-based in every file format.

#ifndef EPSFC_IO_HPP
#define EPSFC_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "epsfc/distributions.hpp"
#include "epsfc/game.hpp"
#include "epsfc/learning.hpp"
#include "epsfc/stabilizers.hpp"
#include "epsfc/verification.hpp"

namespace epsfc {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent input file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Games: {"kind":"fhg","n":..,"adj":[[0/1,..],..]} or
// {"kind":"anon","n":..,"vals":[[..],..]}, optional "provenance" object and,
// for single-peaked games, an optional "ordering" of sizes.
Json to_json(const Game& game);
Game game_from_json(const Json& j);

struct GameFile {
  Game game;
  Json provenance;
  std::optional<std::vector<std::size_t>> ordering;
};

GameFile read_game_file(const std::filesystem::path& path);
void write_game_file(const std::filesystem::path& path, const Game& game, const Json& provenance,
                     const std::optional<std::vector<std::size_t>>& ordering = std::nullopt);

// Partitions: {"blocks":[[agent,..],..]}.
Json to_json(const Partition& pi);
/// Throws InvalidPartition if the blocks do not partition 1..n.
Partition partition_from_json(const Json& j, std::size_t n);
Partition read_partition_file(const std::filesystem::path& path, std::size_t n);

Json to_json(const Coalition& c);
Coalition coalition_from_json(const Json& j, std::size_t n);

// Distributions: {"kind":"uniform"} | {"kind":"size_tilted","g":[..]} |
// {"kind":"family","support":[[..],..]} |
// {"kind":"adversarial","family":[[..],..],"lambda":..}.
CoalitionDistribution distribution_from_json(const Json& j, std::size_t n);
Json to_json(const CoalitionDistribution& dist);

/// Accepts "uniform", an inline JSON object, or a path to a JSON file.
CoalitionDistribution parse_distribution(const std::string& spec, std::size_t n);

// Samples: one {"S":[..],"v":{"agent":value,..}} per line.
Json to_json(const SampleRecord& rec);
SampleRecord sample_from_json(const Json& j, std::size_t n);
void write_samples(std::ostream& out, const std::vector<SampleRecord>& samples);
/// `n` = 0 infers the number of agents from the largest id seen.
std::vector<SampleRecord> read_samples(std::istream& in, std::size_t n);

// Traces and reports.
Json to_json(const FhgStabilizerTrace& trace);
Json to_json(const AnonStabilizerTrace& trace);
Json to_json(const SizeInterval& interval);
Json to_json(const BlockingReport& report);
Json to_json(const McEstimate& est);
Json to_json(const SpLemmaReport& report);

}  // namespace epsfc

#endif  // EPSFC_IO_HPP
