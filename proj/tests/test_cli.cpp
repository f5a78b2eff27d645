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


#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "../tools/cli.hpp"
#include "doctest.h"
#include "epsfc/io.hpp"
#include "epsfc/learning.hpp"

using namespace epsfc;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path dir() {
  static const fs::path d = [] {
    auto p = fs::temp_directory_path() / "epsfc_test_cli";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return d;
}

std::string path(const std::string& name) { return (dir() / name).string(); }

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string l; std::getline(ss, l);) out.push_back(l);
  return out;
}

void write(const std::string& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("usage errors") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"bogus"}).code == cli::kUsage);
  CHECK(run({"--help"}).code == cli::kOk);
  CHECK(run({"gen", "--kind", "fhg-random", "--n", "5", "--p", "1.5"}).code == cli::kUsage);
  CHECK(run({"gen", "--kind", "nonsense", "--n", "5"}).code == cli::kUsage);
  CHECK(run({"gen", "--n", "5"}).code == cli::kUsage);
  CHECK(run({"verify", "--game", path("absent.json"), "--partition", path("absent.json")}).code == cli::kUsage);
}

TEST_CASE("gen is deterministic") {
  const auto a = path("g7a.json"), b = path("g7b.json"), c = path("g8.json");
  REQUIRE(run({"gen", "--kind", "fhg-random", "--n", "12", "--p", "0.3", "--seed", "7", "--out", a}).code == 0);
  REQUIRE(run({"gen", "--kind", "fhg-random", "--n", "12", "--p", "0.3", "--seed", "7", "--out", b}).code == 0);
  REQUIRE(run({"gen", "--kind", "fhg-random", "--n", "12", "--p", "0.3", "--seed", "8", "--out", c}).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) != slurp(c));
  const auto f = read_game_file(a);
  CHECK(agents(f.game) == 12);
  CHECK(f.provenance["seed"] == 7);
  CHECK(f.provenance["generator"] == "fhg-random");

  const auto sp = run({"gen", "--kind", "anon-sp-random", "--n", "6", "--seed", "1"});
  CHECK(sp.code == 0);
  CHECK(Json::parse(sp.out).contains("ordering"));
}

TEST_CASE("gen searches and extends") {
  const auto base = path("sp7.json"), ext = path("sp9.json");
  REQUIRE(run({"gen", "--kind", "anon-sp-empty-core", "--n", "7", "--seed", "1", "--max-attempts", "2000", "--out",
               base})
              .code == 0);
  const auto f = read_game_file(base);
  CHECK(f.provenance.contains("attempts"));
  CHECK(f.provenance.contains("attempt_seed"));
  REQUIRE(run({"gen", "--kind", "anon-sp-extend", "--n", "9", "--base", base, "--out", ext}).code == 0);
  CHECK(agents(read_game_file(ext).game) == 9);
  CHECK(run({"gen", "--kind", "anon-sp-extend", "--n", "9"}).code == cli::kUsage);

  const auto miss = run({"gen", "--kind", "anon-sp-empty-core", "--n", "7", "--seed", "1", "--max-attempts", "2"});
  CHECK(miss.code == cli::kGuard);
}

TEST_CASE("sample") {
  const auto g = path("pair.json");
  write(g, R"({"kind":"fhg","n":2,"adj":[[0,1],[1,0]]})");
  const auto empty = path("empty.jsonl");
  REQUIRE(run({"sample", "--game", g, "--m", "0", "--out", empty}).code == 0);
  CHECK(slurp(empty).empty());

  const auto s = path("pair.jsonl");
  REQUIRE(run({"sample", "--game", g, "--m", "100000", "--seed", "3", "--out", s}).code == 0);
  std::ifstream in(s);
  const auto samples = read_samples(in, 2);
  REQUIRE(samples.size() == 100000);
  std::map<std::uint64_t, double> count;
  for (const auto& r : samples) {
    count[r.coalition.mask()] += 1;
    CHECK(r.member_values.size() == r.coalition.size());
  }
  // chi-square with 2 degrees of freedom, 0.999 quantile 13.8
  double chi = 0.0;
  for (std::uint64_t m = 1; m < 4; ++m) chi += std::pow(count[m] - 100000.0 / 3, 2) / (100000.0 / 3);
  CHECK(chi < 13.8);

  const auto again = path("pair2.jsonl");
  REQUIRE(run({"sample", "--game", g, "--m", "500", "--seed", "3", "--out", again}).code == 0);
  const auto all = lines(slurp(s));
  CHECK(lines(slurp(again)) == std::vector<std::string>(all.begin(), all.begin() + 500));
  CHECK(run({"sample", "--game", g, "--m", "5", "--dist", R"({"kind":"weird"})"}).code == cli::kUsage);
}

TEST_CASE("stabilize from a game") {
  const auto k = path("k12.json");
  Json adj = Json::array();
  for (int i = 0; i < 12; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 12; ++j) row.push_back(i == j ? 0 : 1);
    adj.push_back(row);
  }
  write(k, Json{{"kind", "fhg"}, {"n", 12}, {"adj", adj}}.dump());
  const auto trace = path("k12.trace.json");
  const auto r = run({"stabilize", "--game", k, "--trace", trace});
  REQUIRE(r.code == 0);
  CHECK(partition_from_json(Json::parse(r.out), 12) == Partition::grand(12));
  CHECK(Json::parse(slurp(trace))["branch"] == "clique");

  const auto a = path("anon.json");
  REQUIRE(run({"gen", "--kind", "anon-random", "--n", "10", "--seed", "2", "--out", a}).code == 0);
  const auto at = path("anon.trace.json");
  REQUIRE(run({"stabilize", "--game", a, "--eps", "0.5", "--trace", at, "--out", path("anon.part.json")}).code == 0);
  const Json t = Json::parse(slurp(at));
  CHECK(t["s_star"].get<std::size_t>() * t["q"].get<std::size_t>() + t["r"].get<std::size_t>() == 10);

  // a non-single-peaked game with the single-peaked class
  CHECK(run({"stabilize", "--game", a, "--class", "anon-sp"}).code == cli::kUsage);
  CHECK(run({"stabilize", "--game", a, "--samples", path("x")}).code == cli::kUsage);
}

TEST_CASE("stabilize from samples") {
  const auto g = path("fhg8.json"), s = path("fhg8.jsonl"), few = path("few.jsonl");
  REQUIRE(run({"gen", "--kind", "fhg-random", "--n", "8", "--p", "0.4", "--seed", "5", "--out", g}).code == 0);
  const auto m = std::to_string(fhg_sample_size(8, 0.01));
  REQUIRE(run({"sample", "--game", g, "--m", m, "--seed", "1", "--out", s}).code == 0);
  const auto r = run({"stabilize", "--samples", s, "--class", "fhg"});
  CHECK(r.code == 0);
  CHECK(partition_from_json(Json::parse(r.out), 8).universe() == 8);

  REQUIRE(run({"sample", "--game", g, "--m", "2", "--seed", "1", "--out", few}).code == 0);
  const auto fail = run({"stabilize", "--samples", few, "--class", "fhg", "--n", "8"});
  CHECK(fail.code == cli::kLearner);
  CHECK(fail.err.find("agent") != std::string::npos);
  CHECK(run({"stabilize", "--samples", s}).code == cli::kUsage);

  const auto a = path("anon8.json"), as = path("anon8.jsonl");
  REQUIRE(run({"gen", "--kind", "anon-random", "--n", "8", "--seed", "5", "--out", a}).code == 0);
  REQUIRE(run({"sample", "--game", a, "--m", "3", "--seed", "1", "--out", as}).code == 0);
  CHECK(run({"stabilize", "--samples", as, "--class", "anon", "--n", "8", "--eps", "0.9"}).code == cli::kLearner);
}

TEST_CASE("verify") {
  const auto g = path("pairv.json"), p = path("single2.json"), wrong = path("single3.json");
  write(g, R"({"kind":"fhg","n":2,"adj":[[0,1],[1,0]]})");
  write(p, R"({"blocks":[[1],[2]]})");
  write(wrong, R"({"blocks":[[1],[2],[3]]})");
  const auto csv = path("verify.csv");
  auto r = run({"verify", "--game", g, "--partition", p, "--csv", csv});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("1 / 3") != std::string::npos);
  r = run({"verify", "--game", g, "--partition", p, "--csv", csv, "--mode", "mc", "--mc", "3000", "--seed", "4"});
  REQUIRE(r.code == 0);
  const auto rows = lines(slurp(csv));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "n,class,eps_floor,mass,p_hat,ci,seed,wall_ms");
  CHECK(rows[1].rfind("2,fhg,", 0) == 0);

  CHECK(run({"verify", "--game", g, "--partition", p, "--eps", "0.3"}).code == cli::kViolation);
  CHECK(run({"verify", "--game", g, "--partition", p, "--eps", "0.34"}).code == cli::kOk);
  CHECK(run({"verify", "--game", g, "--partition", wrong}).code == cli::kUsage);
  CHECK(run({"verify", "--game", g, "--partition", p, "--mode", "fast"}).code == cli::kUsage);

  const auto big = path("big.json"), bigp = path("big.part.json");
  REQUIRE(run({"gen", "--kind", "fhg-random", "--n", "25", "--p", "0.2", "--out", big}).code == 0);
  Json blocks = Json::array();
  for (int i = 1; i <= 25; ++i) blocks.push_back(Json::array({i}));
  write(bigp, Json{{"blocks", blocks}}.dump());
  CHECK(run({"verify", "--game", big, "--partition", bigp}).code == cli::kGuard);
  CHECK(run({"verify", "--game", big, "--partition", bigp, "--mode", "mc", "--mc", "2000"}).code == cli::kOk);
}

TEST_CASE("verify monte carlo agrees with exact") {
  const auto g = path("fhg12.json"), p = path("fhg12.part.json");
  REQUIRE(run({"gen", "--kind", "fhg-random", "--n", "12", "--p", "0.5", "--seed", "3", "--out", g}).code == 0);
  write(p, R"({"blocks":[[1,2,3],[4,5,6],[7,8,9],[10,11,12]]})");
  const auto exact = run({"verify", "--game", g, "--partition", p, "--out", path("exact.json")});
  const auto mc = run({"verify", "--game", g, "--partition", p, "--mode", "mc", "--mc", "100000", "--delta", "0.01",
                       "--out", path("mc.json")});
  REQUIRE(exact.code == 0);
  REQUIRE(mc.code == 0);
  const double mass = Json::parse(slurp(path("exact.json")))["mass"];
  const Json est = Json::parse(slurp(path("mc.json")));
  CHECK(std::abs(est["p_hat"].get<double>() - mass) <= est["ci_halfwidth"].get<double>());
}

TEST_CASE("experiment grid, resume and failures") {
  const auto cfg = path("exp.json"), csv = path("exp.csv"), csv2 = path("exp2.csv");
  write(cfg, Json{{"class", "anon-sp"}, {"n", {6, 7, 8}}, {"eps", {0.2, 0.3, 0.5}}, {"seed", 11}, {"m", 4000}}.dump());
  auto r = run({"experiment", "--config", cfg, "--csv", csv});
  REQUIRE(r.code == 0);
  const auto first = slurp(csv);
  auto rows = lines(first);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0] == "n,class,eps,rep,seed,status,m,eps_floor,mass,p_hat,ci,below_eps,error");

  REQUIRE(run({"experiment", "--config", cfg, "--csv", csv2, "--jobs", "3"}).code == 0);
  CHECK(slurp(csv2) == first);

  // drop the last three rows and resume
  {
    std::ofstream out(csv);
    for (std::size_t k = 0; k < 7; ++k) out << rows[k] << '\n';
  }
  r = run({"experiment", "--config", cfg, "--csv", csv});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("3 cells run, 6 already present") != std::string::npos);
  CHECK(slurp(csv) == first);
  CHECK(run({"experiment", "--config", cfg, "--csv", csv, "--timing"}).code == cli::kUsage);

  // too few samples for any size to be learned by every agent
  const auto bad = path("bad.json"), bad_csv = path("bad.csv");
  write(bad, Json{{"class", "anon"}, {"n", 8}, {"eps", 0.5}, {"reps", 2}, {"m", 1}}.dump());
  REQUIRE(run({"experiment", "--config", bad, "--csv", bad_csv}).code == 0);
  rows = lines(slurp(bad_csv));
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].find(",failed,") != std::string::npos);
  CHECK(rows[2].find(",failed,") != std::string::npos);

  write(bad, R"({"class":"anon","n":8,"eps":1.5})");
  CHECK(run({"experiment", "--config", bad, "--csv", path("never.csv")}).code == cli::kUsage);
}
