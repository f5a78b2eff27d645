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


#include "epsfc/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace epsfc {
namespace {

std::size_t to_agent(const Json& v, std::size_t n) {
  if (!v.is_number_integer()) throw FormatError("agent ids must be integers");
  const auto id = v.get<long long>();
  if (id < 1 || (n != 0 && static_cast<std::size_t>(id) > n))
    throw FormatError("agent id " + std::to_string(id) + " outside 1.." + std::to_string(n));
  return static_cast<std::size_t>(id - 1);
}

std::vector<AgentId> agent_list(const Json& j, std::size_t n) {
  if (!j.is_array()) throw FormatError("expected an array of agent ids");
  std::vector<AgentId> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(to_agent(v, n));
  return out;
}

std::vector<Coalition> coalition_list(const Json& j, std::size_t n) {
  if (!j.is_array()) throw FormatError("expected an array of coalitions");
  std::vector<Coalition> out;
  out.reserve(j.size());
  for (const auto& c : j) out.push_back(coalition_from_json(c, n));
  return out;
}

Json one_based(const std::vector<AgentId>& agents) {
  Json a = Json::array();
  for (AgentId i : agents) a.push_back(i + 1);
  return a;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

/// Runs `f`, reporting malformed JSON values as FormatError.
template <typename F>
auto checked(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

std::size_t require_n(const Json& j) {
  if (!j.contains("n") || !j["n"].is_number_unsigned()) throw FormatError("game is missing a non-negative \"n\"");
  return j["n"].get<std::size_t>();
}

}  // namespace

// ---------------------------------------------------------------------------
// Games

Json to_json(const Game& game) {
  Json j;
  if (const auto* fhg = std::get_if<SimpleFhg>(&game)) {
    j["kind"] = "fhg";
    j["n"] = fhg->agents();
    Json adj = Json::array();
    for (AgentId i = 0; i < fhg->agents(); ++i) {
      Json row = Json::array();
      for (AgentId k = 0; k < fhg->agents(); ++k) row.push_back(fhg->arc(i, k) ? 1 : 0);
      adj.push_back(std::move(row));
    }
    j["adj"] = std::move(adj);
  } else {
    const auto& anon = std::get<AnonymousGame>(game);
    j["kind"] = "anon";
    j["n"] = anon.agents();
    j["vals"] = anon.rows();
  }
  return j;
}

static Game game_from_json_impl(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) throw FormatError("game must be an object with a \"kind\"");
  const std::size_t n = require_n(j);
  const auto kind = j["kind"].get<std::string>();
  if (kind == "fhg") {
    const auto& adj = j.at("adj");
    if (!adj.is_array() || adj.size() != n) throw FormatError("\"adj\" must have n rows");
    std::vector<std::vector<bool>> a(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
      if (!adj[i].is_array() || adj[i].size() != n) throw FormatError("\"adj\" row " + std::to_string(i + 1) + " must have n entries");
      for (std::size_t k = 0; k < n; ++k) {
        const int v = adj[i][k].get<int>();
        if (v != 0 && v != 1) throw FormatError("adjacency entries must be 0 or 1");
        a[i][k] = v == 1;
      }
    }
    try {
      return SimpleFhg(a);
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
  }
  if (kind == "anon") {
    const auto& vals = j.at("vals");
    if (!vals.is_array() || vals.size() != n) throw FormatError("\"vals\" must have n rows");
    std::vector<std::vector<double>> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!vals[i].is_array() || vals[i].size() != n) throw FormatError("\"vals\" row " + std::to_string(i + 1) + " must have n entries");
      v[i] = vals[i].get<std::vector<double>>();
    }
    return AnonymousGame(v);
  }
  throw FormatError("unknown game kind '" + kind + "'");
}

Game game_from_json(const Json& j) {
  return checked("game", [&] { return game_from_json_impl(j); });
}

GameFile read_game_file(const std::filesystem::path& path) {
  const Json j = read_json_file(path);
  try {
    GameFile f{game_from_json(j), j.value("provenance", Json::object()), std::nullopt};
    if (j.contains("ordering")) f.ordering = j["ordering"].get<std::vector<std::size_t>>();
    return f;
  } catch (const Json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_game_file(const std::filesystem::path& path, const Game& game, const Json& provenance,
                     const std::optional<std::vector<std::size_t>>& ordering) {
  Json j;
  if (!provenance.is_null() && !provenance.empty()) j["provenance"] = provenance;
  const Json body = to_json(game);
  for (const auto& [k, v] : body.items()) j[k] = v;
  if (ordering) j["ordering"] = *ordering;
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << j.dump() << '\n';
}

// ---------------------------------------------------------------------------
// Partitions and coalitions

Json to_json(const Coalition& c) {
  Json a = Json::array();
  c.for_each([&](AgentId i) { a.push_back(i + 1); });
  return a;
}

Coalition coalition_from_json(const Json& j, std::size_t n) {
  Coalition c(n);
  for (AgentId i : agent_list(j, n)) c.insert(i);
  return c;
}

Json to_json(const Partition& pi) {
  Json blocks = Json::array();
  for (const auto& b : pi.canonical_blocks()) blocks.push_back(one_based(b));
  return Json{{"blocks", std::move(blocks)}};
}

static Partition partition_from_json_impl(const Json& j, std::size_t n) {
  if (!j.is_object() || !j.contains("blocks") || !j["blocks"].is_array())
    throw FormatError("partition must be an object with a \"blocks\" array");
  std::vector<std::vector<AgentId>> blocks;
  for (const auto& b : j["blocks"]) {
    if (!b.is_array()) throw FormatError("each block must be an array");
    std::vector<AgentId> block;
    for (const auto& v : b) {
      if (!v.is_number_integer() || v.get<long long>() < 1)
        throw FormatError("agent ids must be positive integers");
      // Out-of-range ids are reported by the partition validator.
      block.push_back(v.get<std::size_t>() - 1);
    }
    blocks.push_back(std::move(block));
  }
  return Partition::from_blocks(n, blocks);
}

Partition partition_from_json(const Json& j, std::size_t n) {
  return checked("partition", [&] { return partition_from_json_impl(j, n); });
}

Partition read_partition_file(const std::filesystem::path& path, std::size_t n) {
  return partition_from_json(read_json_file(path), n);
}

// ---------------------------------------------------------------------------
// Distributions

static CoalitionDistribution distribution_from_json_impl(const Json& j, std::size_t n) {
  if (!j.is_object() || !j.contains("kind")) throw FormatError("distribution must be an object with a \"kind\"");
  const auto kind = j["kind"].get<std::string>();
  if (kind == "uniform") return CoalitionDistribution::uniform(n);
  if (kind == "size_tilted") return CoalitionDistribution::size_tilted(n, j.at("g").get<std::vector<double>>());
  if (kind == "family") return CoalitionDistribution::family_uniform(coalition_list(j.at("support"), n));
  if (kind == "adversarial")
    return CoalitionDistribution::adversarial_bounded(coalition_list(j.at("family"), n), n,
                                                      j.at("lambda").get<double>());
  throw FormatError("unknown distribution kind '" + kind + "'");
}

CoalitionDistribution distribution_from_json(const Json& j, std::size_t n) {
  return checked("distribution", [&] { return distribution_from_json_impl(j, n); });
}

Json to_json(const CoalitionDistribution& dist) {
  using Kind = CoalitionDistribution::Kind;
  auto family = [&] {
    Json a = Json::array();
    for (const auto& c : dist.family()) a.push_back(to_json(c));
    return a;
  };
  switch (dist.kind()) {
    case Kind::kUniform: return Json{{"kind", "uniform"}};
    case Kind::kSizeTilted: return Json{{"kind", "size_tilted"}, {"g", dist.size_weights()}};
    case Kind::kFamily: return Json{{"kind", "family"}, {"support", family()}};
    case Kind::kAdversarial:
      return Json{{"kind", "adversarial"}, {"family", family()}, {"lambda", dist.lambda_parameter()}};
  }
  return {};
}

CoalitionDistribution parse_distribution(const std::string& spec, std::size_t n) {
  if (spec.empty() || spec == "uniform") return CoalitionDistribution::uniform(n);
  try {
    if (spec.front() == '{') return distribution_from_json(Json::parse(spec), n);
    return distribution_from_json(read_json_file(spec), n);
  } catch (const Json::exception& e) {
    throw FormatError("distribution '" + spec + "': " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Samples

Json to_json(const SampleRecord& rec) {
  Json v = Json::object();
  for (const auto& [agent, value] : rec.member_values) v[std::to_string(agent + 1)] = value;
  return Json{{"S", to_json(rec.coalition)}, {"v", std::move(v)}};
}

static SampleRecord sample_from_json_impl(const Json& j, std::size_t n) {
  if (!j.is_object() || !j.contains("S") || !j.contains("v")) throw FormatError("sample needs \"S\" and \"v\"");
  SampleRecord rec{coalition_from_json(j["S"], n), {}};
  for (const auto& [key, value] : j["v"].items()) {
    std::size_t pos = 0;
    long long id = 0;
    try {
      id = std::stoll(key, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != key.size() || id < 1 || static_cast<std::size_t>(id) > n)
      throw FormatError("bad agent key '" + key + "' in sample");
    rec.member_values[static_cast<AgentId>(id - 1)] = value.get<double>();
  }
  try {
    rec.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return rec;
}

SampleRecord sample_from_json(const Json& j, std::size_t n) {
  return checked("sample", [&] { return sample_from_json_impl(j, n); });
}

void write_samples(std::ostream& out, const std::vector<SampleRecord>& samples) {
  for (const auto& rec : samples) out << to_json(rec).dump() << '\n';
}

std::vector<SampleRecord> read_samples(std::istream& in, std::size_t n) {
  std::vector<Json> lines;
  std::string line;
  std::size_t lineno = 0;
  std::size_t largest = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      lines.push_back(Json::parse(line));
    } catch (const Json::parse_error& e) {
      throw FormatError("sample line " + std::to_string(lineno) + ": " + e.what());
    }
    if (n == 0 && lines.back().contains("S"))
      for (const auto& v : lines.back()["S"])
        if (v.is_number_unsigned()) largest = std::max(largest, v.get<std::size_t>());
  }
  if (n == 0) n = largest;
  std::vector<SampleRecord> out;
  out.reserve(lines.size());
  for (const auto& j : lines) out.push_back(sample_from_json(j, n));
  return out;
}

// ---------------------------------------------------------------------------
// Traces and reports

Json to_json(const SizeInterval& interval) {
  return Json{{"lo", interval.lo}, {"hi", interval.hi}, {"sizes", interval.sizes}};
}

Json to_json(const FhgStabilizerTrace& trace) {
  Json iters = Json::array();
  for (const auto& it : trace.iterations) iters.push_back(Json{{"agent", it.agent + 1}, {"affected", one_based(it.affected)}});
  return Json{{"algorithm", "fhg"},
              {"thresholds",
               {{"degree_cut", trace.thresholds.degree_cut},
                {"candidates", trace.thresholds.candidates},
                {"budget", trace.thresholds.budget}}},
              {"low_degree", trace.low_degree},
              {"branch", trace.branch == FhgBranch::kMatching ? "matching" : "clique"},
              {"green", one_based(trace.green)},
              {"iterations", std::move(iters)},
              {"clique", one_based(trace.clique)},
              {"starved", trace.starved}};
}

Json to_json(const AnonStabilizerTrace& trace) {
  Json j{{"algorithm", trace.ordered_sizes.empty() ? "anon" : "anon-sp"},
         {"interval", to_json(trace.interval)},
         {"s_star", trace.s_star},
         {"q", trace.q},
         {"r", trace.r},
         {"green", one_based(trace.green_agents)},
         {"interval_peaks", trace.interval_peaks}};
  if (!trace.ordered_sizes.empty()) {
    j["ordered_sizes"] = trace.ordered_sizes;
    j["h_star"] = trace.h_star;
    j["lower"] = one_based(trace.lower);
    j["equal"] = one_based(trace.equal);
    j["greater"] = one_based(trace.greater);
    j["lower_in"] = one_based(trace.lower_in);
    j["equal_in"] = one_based(trace.equal_in);
    j["greater_in"] = one_based(trace.greater_in);
  }
  return j;
}

Json to_json(const BlockingReport& report) {
  Json w = Json::array();
  for (const auto& c : report.witnesses) w.push_back(to_json(c));
  Json j{{"n", report.agents},
         {"total_coalitions", report.total_coalitions},
         {"blocking_count", report.blocking_count},
         {"fraction", boost::rational_cast<double>(report.fraction)},
         {"fraction_exact",
          std::to_string(report.fraction.numerator()) + "/" + std::to_string(report.fraction.denominator())},
         {"blocking_by_size", report.blocking_by_size},
         {"witnesses", std::move(w)}};
  if (report.mass) j["mass"] = *report.mass;
  return j;
}

Json to_json(const McEstimate& est) {
  return Json{{"samples", est.samples},
              {"hits", est.hits},
              {"p_hat", est.p_hat},
              {"ci_halfwidth", est.ci_halfwidth},
              {"delta", est.delta}};
}

Json to_json(const SpLemmaReport& report) {
  Json j{{"blockers", report.blockers},
         {"blockers_in_interval", report.blockers_in_interval},
         {"count_bound", report.count_bound},
         {"equal_avoided", report.equal_avoided},
         {"no_mixing", report.no_mixing},
         {"count_within_bound", report.count_within_bound},
         {"equal_hits_outside_interval", report.equal_hits_outside_interval}};
  if (report.equal_witness) j["equal_witness"] = to_json(*report.equal_witness);
  if (report.mixing_witness) j["mixing_witness"] = to_json(*report.mixing_witness);
  return j;
}

}  // namespace epsfc
