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


#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "epsfc/distributions.hpp"
#include "epsfc/game.hpp"
#include "epsfc/instances.hpp"
#include "epsfc/io.hpp"
#include "epsfc/learning.hpp"
#include "epsfc/pipeline.hpp"
#include "epsfc/random.hpp"
#include "epsfc/stabilizers.hpp"
#include "epsfc/verification.hpp"

namespace epsfc::cli {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

/// Bad flag combination or value detected after parsing.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Verification found a partition above the requested threshold.
struct Violation {
  std::string message;
};

struct Options {
  std::string game;
  std::string dist = "uniform";
  std::string cls;
  std::optional<double> eps;
  double delta = 0.1;
  std::optional<double> lambda;
  std::optional<double> alpha;
  std::optional<std::size_t> m;
  std::size_t mc = 100000;
  std::uint64_t seed = 0;
  std::string out;
  std::string trace;
  std::size_t jobs = 1;

  std::string samples;
  std::string partition;
  std::string mode = "exact";
  std::string csv;
  std::string kind;
  std::size_t n = 0;
  double p = 0.5;
  std::string base;
  std::size_t max_attempts = 100000;
  std::string config;
  bool timing = false;
};

std::string fmt(double x) {
  if (std::isnan(x)) return "";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc() ? std::string(buf, end) : std::to_string(x);
}

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

/// Writes to `path`, or to `fallback` when the path is empty.
void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& write) {
  if (path.empty() || path == "-") {
    write(fallback);
    return;
  }
  std::ofstream f(path);
  if (!f) throw FormatError("cannot write " + path);
  write(f);
}

void append_csv(const std::string& path, const std::string& header, const std::string& row) {
  const bool fresh = !fs::exists(path) || fs::file_size(path) == 0;
  std::ofstream f(path, std::ios::app);
  if (!f) throw FormatError("cannot write " + path);
  if (fresh) f << header << '\n';
  f << row << '\n';
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
  return s;
}

void check_unit(double x, const char* name) {
  if (!(x > 0.0 && x < 1.0)) throw UsageError(std::string(name) + " must lie in (0, 1)");
}

GameClass class_for(const Options& o, const Game& game) {
  if (!o.cls.empty()) return parse_game_class(o.cls);
  return std::holds_alternative<SimpleFhg>(game) ? GameClass::kFhg : GameClass::kAnonymous;
}

GameFile load_game(const Options& o) {
  if (o.game.empty()) throw UsageError("--game is required");
  return read_game_file(o.game);
}

/// --lambda if given, otherwise the distribution's own lambda (NaN if unbounded).
double lambda_for(const Options& o, const CoalitionDistribution& dist) {
  if (o.lambda) return *o.lambda;
  try {
    return lambda_of(dist);
  } catch (const UnboundedLambda&) {
    return std::nan("");
  }
}

PipelineParams pipeline_params(const Options& o, GameClass cls) {
  PipelineParams p;
  p.cls = cls;
  p.eps = o.eps.value_or(0.1);
  p.delta = o.delta;
  p.lambda = o.lambda.value_or(1.0);
  p.alpha = o.alpha;
  check_unit(p.eps, "--eps");
  check_unit(p.delta, "--delta");
  if (!(p.lambda >= 1.0)) throw UsageError("--lambda must be >= 1");
  if (p.alpha && !(*p.alpha > 0.0)) throw UsageError("--alpha must be positive");
  return p;
}

Json trace_json(const StabilizerTrace& trace) {
  return std::visit([](const auto& t) { return to_json(t); }, trace);
}

// ---------------------------------------------------------------------------
// gen

int cmd_gen(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.kind.empty()) throw UsageError("--kind is required");
  if (!(o.p >= 0.0 && o.p <= 1.0)) throw UsageError("--p must lie in [0, 1]");
  Json prov{{"generator", o.kind}, {"n", o.n}, {"seed", o.seed}};
  Game game;
  std::optional<std::vector<std::size_t>> ordering;

  if (o.kind == "fhg-empty-core" || o.kind == "anon-sp-empty-core") {
    prov["max_attempts"] = o.max_attempts;
    std::optional<std::size_t> hit;
    std::size_t attempts = 0;
    std::uint64_t attempt_seed = 0;
    if (o.kind == "fhg-empty-core") {
      prov["p"] = o.p;
      auto r = find_empty_core_fhg(o.n, o.p, o.max_attempts, o.seed, o.jobs);
      if (r.instance) game = *r.instance;
      hit = r.hit_index, attempts = r.attempts, attempt_seed = r.attempt_seed;
    } else {
      auto r = find_empty_core_sp(o.n, o.max_attempts, o.seed, o.jobs);
      if (r.instance) {
        game = r.instance->game;
        ordering = r.instance->certificate.ordering;
      }
      hit = r.hit_index, attempts = r.attempts, attempt_seed = r.attempt_seed;
    }
    if (!hit) {
      err << "no empty-core instance found in " << attempts << " attempts\n";
      return kGuard;
    }
    prov["attempts"] = attempts;
    prov["attempt_seed"] = attempt_seed;
  } else {
    GeneratorSpec spec;
    spec.kind = parse_generator_kind(o.kind);
    spec.n = o.n;
    spec.seed = o.seed;
    spec.p = o.p;
    if (spec.kind == GeneratorKind::kFhgRandom) prov["p"] = o.p;
    if (spec.kind == GeneratorKind::kFhgExtend || spec.kind == GeneratorKind::kAnonSpExtend) {
      if (o.base.empty()) throw UsageError("--base is required for extensions");
      spec.base = read_game_file(o.base).game;
      prov["base"] = fs::path(o.base).filename().string();
    }
    GeneratedInstance inst = generate(spec);
    game = std::move(inst.game);
    if (inst.certificate) ordering = inst.certificate->ordering;
  }

  if (o.out.empty() || o.out == "-") {
    Json j;
    j["provenance"] = prov;
    const Json body = to_json(game);
    for (const auto& [k, v] : body.items()) j[k] = v;
    if (ordering) j["ordering"] = *ordering;
    out << j.dump() << '\n';
  } else {
    write_game_file(o.out, game, prov, ordering);
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// sample

int cmd_sample(const Options& o, std::ostream& out) {
  const GameFile gf = load_game(o);
  const std::size_t n = agents(gf.game);
  const CoalitionDistribution dist = parse_distribution(o.dist, n);
  if (!o.m) throw UsageError("--m is required");
  Rng rng(derive_seed(o.seed, "sample", 0));
  const auto samples = draw_samples(gf.game, dist, *o.m, rng);
  emit(o.out, out, [&](std::ostream& s) { write_samples(s, samples); });
  return kOk;
}

// ---------------------------------------------------------------------------
// stabilize

int cmd_stabilize(const Options& o, std::ostream& out) {
  if (o.game.empty() == o.samples.empty()) throw UsageError("give exactly one of --game and --samples");
  std::optional<StabilizeOutcome> result;
  if (!o.game.empty()) {
    const GameFile gf = load_game(o);
    const std::size_t n = agents(gf.game);
    PipelineParams params = pipeline_params(o, class_for(o, gf.game));
    const CoalitionDistribution dist = parse_distribution(o.dist, n);
    if (!o.lambda) params.lambda = std::max(1.0, lambda_for(o, dist));
    params.ordering = gf.ordering;
    result = stabilize_game(gf.game, dist, params);
  } else {
    if (o.cls.empty()) throw UsageError("--class is required with --samples");
    const PipelineParams params = pipeline_params(o, parse_game_class(o.cls));
    std::ifstream in(o.samples);
    if (!in) throw FormatError("cannot open " + o.samples);
    const auto samples = read_samples(in, o.n);
    const std::size_t n = o.n != 0 ? o.n : (samples.empty() ? 0 : samples.front().coalition.universe());
    if (n == 0) throw LearnerFailure("sample file is empty");
    result = stabilize_from_samples(n, samples, params);
  }
  emit(o.out, out, [&](std::ostream& s) { s << to_json(result->partition).dump() << '\n'; });
  if (!o.trace.empty()) emit(o.trace, out, [&](std::ostream& s) { s << trace_json(result->trace).dump(2) << '\n'; });
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

const char* kVerifyHeader = "n,class,eps_floor,mass,p_hat,ci,seed,wall_ms";

int cmd_verify(const Options& o, std::ostream& out) {
  const auto start = Clock::now();
  const GameFile gf = load_game(o);
  const std::size_t n = agents(gf.game);
  if (o.partition.empty()) throw UsageError("--partition is required");
  const Partition pi = read_partition_file(o.partition, n);
  const CoalitionDistribution dist = parse_distribution(o.dist, n);
  const GameClass cls = class_for(o, gf.game);
  check_unit(o.delta, "--delta");
  if (o.eps) check_unit(*o.eps, "--eps");
  const double lambda = lambda_for(o, dist);
  const double floor = std::isnan(lambda) ? std::nan("") : choose_epsilon_floor(n, lambda, cls);

  double mass = std::nan(""), p_hat = std::nan(""), ci = std::nan("");
  Json report;
  if (o.mode == "exact") {
    BlockingReport r = exact_blocking(gf.game, pi, o.jobs);
    r.mass = blocking_mass_from_report(gf.game, pi, dist, r);
    mass = *r.mass;
    report = to_json(r);
    out << "blocking coalitions  " << r.blocking_count << " / " << r.total_coalitions << '\n'
        << "fraction             " << fmt(boost::rational_cast<double>(r.fraction)) << '\n'
        << "mass                 " << fmt(mass) << '\n';
  } else if (o.mode == "mc") {
    const McEstimate est = mc_blocking(gf.game, pi, dist, o.mc, o.delta, o.seed, o.jobs);
    p_hat = est.p_hat;
    ci = est.ci_halfwidth;
    report = to_json(est);
    out << "samples              " << est.samples << '\n'
        << "p_hat                " << fmt(p_hat) << " +- " << fmt(ci) << '\n';
  } else {
    throw UsageError("--mode must be exact or mc");
  }
  const double wall = elapsed_ms(start);
  out << "class                " << to_string(cls) << '\n' << "eps floor            " << fmt(floor) << '\n';

  report["class"] = to_string(cls);
  report["eps_floor"] = std::isnan(floor) ? Json() : Json(floor);
  if (!o.out.empty()) emit(o.out, out, [&](std::ostream& s) { s << report.dump(2) << '\n'; });
  if (!o.csv.empty())
    append_csv(o.csv, kVerifyHeader,
               std::to_string(n) + "," + to_string(cls) + "," + fmt(floor) + "," + fmt(mass) + "," + fmt(p_hat) +
                   "," + fmt(ci) + "," + std::to_string(o.seed) + "," + fmt(std::round(wall * 1000.0) / 1000.0));

  if (o.eps) {
    const double measured = o.mode == "exact" ? mass : p_hat;
    if (!(measured < *o.eps))
      throw Violation{"blocking mass " + fmt(measured) + " is not below eps = " + fmt(*o.eps)};
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// experiment

struct ExperimentConfig {
  GameClass cls = GameClass::kFhg;
  std::vector<std::size_t> ns;
  std::vector<double> eps;
  std::size_t reps = 1;
  std::uint64_t seed = 0;
  double delta = 0.1;
  double lambda = 1.0;
  std::optional<double> alpha;
  Json dist = "uniform";
  std::string generator;
  double p = 0.5;
  std::optional<std::size_t> m;
  std::size_t mc = 0;
  std::string out;
  std::size_t jobs = 1;
};

template <typename T>
std::vector<T> scalar_or_list(const Json& j) {
  if (j.is_array()) return j.get<std::vector<T>>();
  return {j.get<T>()};
}

ExperimentConfig read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
  ExperimentConfig c;
  try {
    c.cls = parse_game_class(j.at("class").get<std::string>());
    c.ns = scalar_or_list<std::size_t>(j.at("n"));
    c.eps = scalar_or_list<double>(j.value("eps", Json(0.1)));
    c.reps = j.value("reps", std::size_t{1});
    c.seed = j.value("seed", std::uint64_t{0});
    c.delta = j.value("delta", 0.1);
    c.lambda = j.value("lambda", 1.0);
    if (j.contains("alpha") && !j["alpha"].is_null()) c.alpha = j["alpha"].get<double>();
    if (j.contains("dist")) c.dist = j["dist"];
    const char* fallback = c.cls == GameClass::kFhg           ? "fhg-random"
                           : c.cls == GameClass::kAnonymous ? "anon-random"
                                                              : "anon-sp-random";
    c.generator = fallback;
    if (j.contains("generator")) {
      c.generator = j["generator"].value("kind", std::string(fallback));
      c.p = j["generator"].value("p", 0.5);
    }
    if (j.contains("m") && !j["m"].is_null()) c.m = j["m"].get<std::size_t>();
    c.mc = j.value("mc", std::size_t{0});
    c.out = j.value("out", std::string());
    c.jobs = j.value("jobs", std::size_t{1});
  } catch (const Json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
  for (double e : c.eps) check_unit(e, "eps");
  check_unit(c.delta, "delta");
  if (!(c.lambda >= 1.0)) throw UsageError("lambda must be >= 1");
  return c;
}

struct Cell {
  std::size_t index = 0;
  std::size_t n = 0;
  double eps = 0.0;
  std::size_t rep = 0;
};

std::string cell_key(std::size_t n, const std::string& eps, const std::string& rep) {
  return std::to_string(n) + "," + eps + "," + rep;
}

std::string experiment_header(bool timing) {
  return std::string("n,class,eps,rep,seed,status,m,eps_floor,mass,p_hat,ci,below_eps") + (timing ? ",wall_ms" : "") +
         ",error";
}

std::string run_cell(const ExperimentConfig& c, const Cell& cell, bool timing) {
  const auto start = Clock::now();
  const std::uint64_t seed = derive_seed(c.seed, "experiment", cell.index);
  std::string m_col, floor_col, mass_col, phat_col, ci_col, below_col, error;
  std::string status = "ok";
  try {
    PipelineParams params;
    params.cls = c.cls;
    params.eps = cell.eps;
    params.delta = c.delta;
    params.lambda = c.lambda;
    params.alpha = c.alpha;
    floor_col = fmt(choose_epsilon_floor(cell.n, c.lambda, c.cls));

    GeneratorSpec spec;
    spec.kind = parse_generator_kind(c.generator);
    spec.n = cell.n;
    spec.seed = derive_seed(seed, "gen", 0);
    spec.p = c.p;
    const GeneratedInstance inst = generate(spec);
    if (inst.certificate) params.ordering = inst.certificate->ordering;

    const CoalitionDistribution dist = c.dist.is_string()
                                           ? parse_distribution(c.dist.get<std::string>(), cell.n)
                                           : distribution_from_json(c.dist, cell.n);
    const std::size_t m = c.m.value_or(default_sample_size(params, cell.n));
    m_col = std::to_string(m);
    Rng rng(derive_seed(seed, "sample", 0));
    const auto samples = draw_samples(inst.game, dist, m, rng);
    const StabilizeOutcome outcome = stabilize_from_samples(cell.n, samples, params);

    double measured;
    if (c.mc == 0 && cell.n <= enumeration_limit()) {
      measured = exact_blocking_mass(inst.game, outcome.partition, dist);
      mass_col = fmt(measured);
    } else {
      const McEstimate est = mc_blocking(inst.game, outcome.partition, dist, c.mc == 0 ? 100000 : c.mc, c.delta,
                                         derive_seed(seed, "mc", 0));
      measured = est.p_hat;
      phat_col = fmt(est.p_hat);
      ci_col = fmt(est.ci_halfwidth);
    }
    below_col = measured < cell.eps ? "1" : "0";
  } catch (const std::exception& e) {
    status = "failed";
    error = sanitize(e.what());
  }
  std::string row = std::to_string(cell.n) + "," + to_string(c.cls) + "," + fmt(cell.eps) + "," +
                    std::to_string(cell.rep) + "," + std::to_string(seed) + "," + status + "," + m_col + "," +
                    floor_col + "," + mass_col + "," + phat_col + "," + ci_col + "," + below_col;
  if (timing) row += "," + fmt(std::round(elapsed_ms(start)));
  return row + "," + error;
}

int cmd_experiment(const Options& o, std::ostream& out) {
  if (o.config.empty()) throw UsageError("--config is required");
  ExperimentConfig c = read_config(o.config);
  const std::string path = !o.csv.empty() ? o.csv : (!o.out.empty() ? o.out : c.out);
  if (path.empty()) throw UsageError("no output CSV: set \"out\" in the config or pass --csv");
  const std::size_t jobs = o.jobs > 1 ? o.jobs : c.jobs;
  const std::string header = experiment_header(o.timing);

  std::set<std::string> done;
  if (fs::exists(path) && fs::file_size(path) > 0) {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    if (line != header) throw UsageError(path + " has a different header; use a fresh file");
    while (std::getline(in, line)) {
      std::vector<std::string> f;
      std::stringstream ss(line);
      for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
      if (f.size() >= 4) done.insert(f[0] + "," + f[2] + "," + f[3]);
    }
  }

  std::vector<Cell> todo;
  std::size_t index = 0;
  for (std::size_t n : c.ns)
    for (double e : c.eps)
      for (std::size_t rep = 0; rep < c.reps; ++rep, ++index)
        if (!done.contains(cell_key(n, fmt(e), std::to_string(rep)))) todo.push_back({index, n, e, rep});

  // Rows are appended in grid order by whichever worker completes the prefix.
  std::vector<std::optional<std::string>> rows(todo.size());
  std::size_t next_row = 0;
  std::mutex lock;
  std::atomic<std::size_t> next_cell{0};
  std::size_t failed = 0;
  auto worker = [&] {
    for (std::size_t k; (k = next_cell.fetch_add(1)) < todo.size();) {
      std::string row = run_cell(c, todo[k], o.timing);
      const std::scoped_lock guard(lock);
      rows[k] = std::move(row);
      for (; next_row < rows.size() && rows[next_row]; ++next_row) {
        if (rows[next_row]->find(",failed,") != std::string::npos) ++failed;
        append_csv(path, header, *rows[next_row]);
        rows[next_row].reset();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < std::max<std::size_t>(1, jobs); ++t) pool.emplace_back(worker);
    worker();
  }
  out << todo.size() << " cells run, " << done.size() << " already present, " << failed << " failed -> " << path
      << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--seed", o.seed, "Root seed");
  sub->add_option("--out", o.out, "Output path (stdout if omitted)");
  sub->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"epsfc: eps-fractional core stability for hedonic games", "epsfc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "epsfc 0.1.0");

  auto* gen = app.add_subcommand("gen", "Generate a game instance");
  gen->add_option("--kind", o.kind,
                  "fhg-random | anon-random | anon-sp-random | fhg-extend | anon-sp-extend | fhg-empty-core | "
                  "anon-sp-empty-core")
      ->required();
  gen->add_option("--n", o.n, "Number of agents")->required();
  gen->add_option("--p", o.p, "Arc probability");
  gen->add_option("--base", o.base, "Base game for extensions");
  gen->add_option("--max-attempts", o.max_attempts, "Search budget for empty-core kinds");
  add_common(gen, o);

  auto* sample = app.add_subcommand("sample", "Draw coalitions and record member valuations");
  sample->add_option("--game", o.game, "Game JSON")->required();
  sample->add_option("--dist", o.dist, "uniform, inline JSON or a JSON file");
  sample->add_option("--m", o.m, "Number of samples")->required();
  add_common(sample, o);

  auto* stabilize = app.add_subcommand("stabilize", "Compute a partition from a game or from samples");
  stabilize->add_option("--game", o.game, "Game JSON");
  stabilize->add_option("--samples", o.samples, "Sample JSON-lines file");
  stabilize->add_option("--n", o.n, "Number of agents for sample input (inferred if omitted)");
  stabilize->add_option("--class", o.cls, "fhg | anon | anon-sp");
  stabilize->add_option("--dist", o.dist, "Distribution used for the size interval");
  stabilize->add_option("--eps", o.eps, "Target eps");
  stabilize->add_option("--delta", o.delta, "Failure probability");
  stabilize->add_option("--lambda", o.lambda, "Lambda bound");
  stabilize->add_option("--alpha", o.alpha, "Mean-estimation slack");
  stabilize->add_option("--trace", o.trace, "Trace JSON output");
  add_common(stabilize, o);

  auto* verify = app.add_subcommand("verify", "Measure the blocking mass of a partition");
  verify->add_option("--game", o.game, "Game JSON")->required();
  verify->add_option("--partition", o.partition, "Partition JSON")->required();
  verify->add_option("--dist", o.dist, "Distribution");
  verify->add_option("--mode", o.mode, "exact | mc");
  verify->add_option("--mc", o.mc, "Monte Carlo samples")->check(CLI::PositiveNumber);
  verify->add_option("--class", o.cls, "Class for the eps floor column");
  verify->add_option("--eps", o.eps, "Fail with exit code 5 unless the mass is below eps");
  verify->add_option("--delta", o.delta, "Confidence parameter for Monte Carlo");
  verify->add_option("--lambda", o.lambda, "Lambda for the eps floor column");
  verify->add_option("--csv", o.csv, "Append a CSV row here");
  add_common(verify, o);

  auto* experiment = app.add_subcommand("experiment", "Run a resumable parameter sweep");
  experiment->add_option("--config", o.config, "Experiment JSON")->required();
  experiment->add_option("--csv", o.csv, "Output CSV (overrides the config)");
  experiment->add_flag("--timing", o.timing, "Record wall-clock time per row");
  add_common(experiment, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << "epsfc 0.1.0\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(o, out, err);
    if (sample->parsed()) return cmd_sample(o, out);
    if (stabilize->parsed()) return cmd_stabilize(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (experiment->parsed()) return cmd_experiment(o, out);
  } catch (const Violation& v) {
    err << "violation: " << v.message << '\n';
    return kViolation;
  } catch (const EnumerationLimit& e) {
    err << "limit: " << e.what() << '\n';
    return kGuard;
  } catch (const LearnerFailure& e) {
    err << "learner: " << e.what() << '\n';
    return kLearner;
  } catch (const InconsistentSamples& e) {
    err << "learner: " << e.what() << '\n';
    return kLearner;
  } catch (const EmptyInterval& e) {
    err << "learner: " << e.what() << '\n';
    return kLearner;
  } catch (const StabilizerError& e) {
    err << "stabilizer: " << e.what() << '\n';
    return kLearner;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace epsfc::cli
