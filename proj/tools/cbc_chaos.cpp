/*
 * Copyright 2026 The cbc-chaos Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
// cbc-chaos: command-line front end for the cbcchaos library.
//
// Exit codes: 0 success, 2 configuration or guard error, 3 a construction
// failed its verification.

#include "cbcchaos/cbcchaos.hpp"
#include "cbcchaos/serialize.hpp"
#include "json_config.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace cbcchaos;
namespace fs = std::filesystem;

constexpr const char* kToolName = "cbc-chaos";
constexpr const char* kToolVersion = "1.0.0";

enum ExitCode { kOk = 0, kConfigError = 2, kVerificationFailure = 3 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::string cipher = "permutation";
  int n_bits = 4;
  std::uint64_t seed = 0;
  int rounds = 4;
  std::string convention = "xor";
  std::string inner_function = "negation";
  std::uint64_t rng_seed = 1;
  unsigned workers = 1;
  std::string out_dir;
  std::string report;
  unsigned digits = 12;
  bool with_timings = false;
};

/// Message given as a comma-separated prefix plus a cycle (default: the
/// all-zeros block).
struct MessageOptions {
  std::string prefix;
  std::string cycle;
};

struct PointOptions {
  std::string state;
  MessageOptions message;
};

std::vector<std::uint32_t> parse_block_list(const std::string& text, int n_bits,
                                            const std::string& what) {
  std::vector<std::uint32_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const Block b = Block::parse(item);
    if (b.n_bits() != n_bits)
      throw ConfigError(what + ": block '" + item + "' has " + std::to_string(b.n_bits()) +
                        " bits, expected n-bits = " + std::to_string(n_bits));
    out.push_back(b.value());
  }
  return out;
}

MessageSequence parse_message(const MessageOptions& m, int n_bits, const std::string& what) {
  auto prefix = parse_block_list(m.prefix, n_bits, what + " message");
  auto cycle = parse_block_list(m.cycle, n_bits, what + " cycle");
  if (cycle.empty()) cycle.push_back(0);
  return MessageSequence(n_bits, std::move(prefix), std::move(cycle));
}

Block parse_state(const std::string& bits, int n_bits, const std::string& what) {
  const Block b = Block::parse(bits);
  if (b.n_bits() != n_bits)
    throw ConfigError(what + " '" + bits + "' has " + std::to_string(b.n_bits()) +
                      " bits, expected n-bits = " + std::to_string(n_bits));
  return b;
}

/// A state from the flag, or an IV drawn from the seeded stream when absent.
Block state_or_iv(const std::string& bits, int n_bits, SplitMix64& rng, const std::string& what) {
  if (!bits.empty()) return parse_state(bits, n_bits, what);
  return Block(static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << n_bits)), n_bits);
}

Rational parse_exact(const std::string& text, const std::string& what) {
  try {
    return parse_fraction(text);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

class Timer {
 public:
  void mark(const std::string& phase) {
    const auto now = std::chrono::steady_clock::now();
    timings_[phase] = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
  }
  json to_json() const { return timings_; }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
  std::map<std::string, double> timings_;
};

class Runner {
 public:
  Runner(const GlobalOptions& g, std::string command) : g_(g), command_(std::move(command)) {}

  SystemConfig system() const {
    const int n = g_.n_bits;
    const auto kind = parse_cipher_kind(g_.cipher);
    auto cipher = make_cipher(kind, n, g_.seed, kind == CipherKind::feistel ? g_.rounds : 0);
    std::vector<std::uint32_t> inner;
    if (g_.inner_function == "negation")
      inner = negation_table(n);
    else if (g_.inner_function == "identity")
      inner = identity_table(n);
    else
      throw ConfigError("unknown inner function '" + g_.inner_function + "'");
    return SystemConfig(std::move(cipher), parse_convention(g_.convention), std::move(inner));
  }

  /// Everything that determines the results. The worker count and the
  /// timings flag are left out: they never change the output.
  json config_echo(json parameters) const {
    const auto kind = parse_cipher_kind(g_.cipher);
    return {{"cipher",
             {{"kind", g_.cipher},
              {"n_bits", g_.n_bits},
              {"seed", g_.seed},
              {"rounds", kind == CipherKind::feistel ? g_.rounds : 0}}},
            {"convention", g_.convention},
            {"inner_function", g_.inner_function},
            {"rng_seed", g_.rng_seed},
            {"digits", g_.digits},
            {"parameters", std::move(parameters)}};
  }

  fs::path output_path(const std::string& explicit_path, const std::string& default_name) const {
    if (!explicit_path.empty()) return explicit_path;
    std::string dir = g_.out_dir;
    if (dir.empty())
      if (const char* env = std::getenv("CBC_CHAOS_OUT_DIR")) dir = env;
    if (dir.empty()) dir = ".";
    return fs::path(dir) / default_name;
  }

  json exact(const Rational& r) const { return exact_to_json(r, g_.digits); }

  void write_report(const json& config, const json& results, const Timer& timer) const {
    json report = {{"tool", kToolName},
                   {"version", kToolVersion},
                   {"command", command_},
                   {"config", config},
                   {"results", results}};
    if (g_.with_timings) report["timings_ms"] = timer.to_json();
    write_text(output_path(g_.report, command_ + ".json"), report.dump(2) + "\n");
  }

  static void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
  }

  const GlobalOptions& globals() const { return g_; }

 private:
  const GlobalOptions& g_;
  std::string command_;
};

json point_config(const PointOptions& p) {
  return {{"state", p.state}, {"message", p.message.prefix}, {"cycle", p.message.cycle}};
}

// --- subcommands -----------------------------------------------------------

struct GraphOptions {
  std::string dot;
  std::string adjacency;
};

void run_graph(const Runner& r, const GraphOptions& o) {
  Timer timer;
  const auto cfg = r.system();
  if (cfg.n_bits() > kMaxGraphBits)
    throw ConfigError("graph guard: n-bits must be <= " + std::to_string(kMaxGraphBits));
  const auto g = build_graph(cfg, r.globals().workers);
  timer.mark("build");
  const auto verdict = verdict_from(g);
  timer.mark("scc");
  json results = verdict_to_json(verdict);
  results["vertex_count"] = g.vertex_count();
  results["edge_count"] = g.edge_count();
  results["complete"] = g.is_complete();
  results["note"] =
      "strong connectivity is sufficient for strong transitivity and regularity; a failing "
      "condition does not establish the absence of chaos";
  if (!o.dot.empty()) Runner::write_text(o.dot, to_dot(g));
  if (!o.adjacency.empty()) Runner::write_text(o.adjacency, adjacency_to_json(g).dump(2) + "\n");
  r.write_report(r.config_echo({{"dot", o.dot}, {"adjacency", o.adjacency}}), results, timer);
}

struct SimulateOptions {
  std::string iv;
  MessageOptions message;
  std::size_t steps = 8;
  std::string csv;
};

void run_simulate(const Runner& r, const SimulateOptions& o) {
  Timer timer;
  const auto cfg = r.system();
  SplitMix64 rng(r.globals().rng_seed);
  const SystemPoint start(state_or_iv(o.iv, cfg.n_bits(), rng, "iv"),
                          parse_message(o.message, cfg.n_bits(), "simulate"));
  const auto trajectory = iterate(cfg, start, o.steps);
  timer.mark("iterate");

  std::ostringstream csv;
  csv << "step,state,next_block\n";
  json rows = json::array();
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    const auto state = trajectory[i].state.to_string();
    const auto next = trajectory[i].message.block(0).to_string();
    csv << i << ',' << state << ',' << next << '\n';
    rows.push_back({{"step", i}, {"state", state}, {"next_block", next}});
  }
  const auto csv_path = r.output_path(o.csv, "trajectory.csv");
  Runner::write_text(csv_path, csv.str());

  json results = {{"initial", point_to_json(start)},
                  {"final", point_to_json(trajectory.back())},
                  {"trajectory", rows}};
  r.write_report(r.config_echo({{"iv", o.iv},
                                {"resolved_iv", start.state.to_string()},
                                {"message", o.message.prefix},
                                {"cycle", o.message.cycle},
                                {"steps", o.steps},
                                {"csv", o.csv}}),
                 results, timer);
}

struct DistanceOptions {
  PointOptions x, y;
  std::size_t bowen_n = 1;
};

void run_distance(const Runner& r, const DistanceOptions& o) {
  Timer timer;
  const auto cfg = r.system();
  const int n = cfg.n_bits();
  if (o.x.state.empty() || o.y.state.empty())
    throw ConfigError("distance requires --x-state and --y-state");
  if (o.bowen_n < 1) throw ConfigError("distance requires --bowen-n >= 1");
  const SystemPoint x(parse_state(o.x.state, n, "x-state"), parse_message(o.x.message, n, "x"));
  const SystemPoint y(parse_state(o.y.state, n, "y-state"), parse_message(o.y.message, n, "y"));
  json results = {{"x", point_to_json(x)},
                  {"y", point_to_json(y)},
                  {"state_distance", state_distance(x.state, y.state)},
                  {"message_distance", r.exact(message_distance(x.message, y.message))},
                  {"distance", r.exact(distance(x, y))},
                  {"bowen_n", o.bowen_n},
                  {"bowen_distance", r.exact(bowen_distance(cfg, x, y, o.bowen_n))}};
  results["separating_radius"] = x == y ? json(nullptr) : r.exact(separating_radius(x, y));
  timer.mark("distance");
  r.write_report(r.config_echo({{"x", point_config(o.x)},
                                {"y", point_config(o.y)},
                                {"bowen_n", o.bowen_n}}),
                 results, timer);
}

struct MixOptions {
  PointOptions center, target;
  std::string epsilon = "1/2";
};

int run_mix(const Runner& r, const MixOptions& o) {
  Timer timer;
  const auto cfg = r.system();
  const int n = cfg.n_bits();
  if (o.target.state.empty()) throw ConfigError("mix requires --target-state");
  SplitMix64 rng(r.globals().rng_seed);
  const Ball ball(SystemPoint(state_or_iv(o.center.state, n, rng, "center-state"),
                              parse_message(o.center.message, n, "center")),
                  parse_exact(o.epsilon, "epsilon"));
  if (ball.radius >= 1) throw ConfigError("mix guard: epsilon must be < 1");
  const SystemPoint target(parse_state(o.target.state, n, "target-state"),
                           parse_message(o.target.message, n, "target"));
  const auto w = mixing_witness(cfg, ball, target);
  const bool verified = verify_mixing(cfg, w);
  timer.mark("mix");

  json results = {{"k", w.k},
                  {"steps", w.steps},
                  {"correction_block", w.constructed_point.message.block(w.k).to_string()},
                  {"constructed_point", point_to_json(w.constructed_point)},
                  {"target", point_to_json(w.target)},
                  {"ball", {{"center", point_to_json(ball.center)}, {"radius", r.exact(ball.radius)}}},
                  {"distance_to_center", r.exact(distance(ball.center, w.constructed_point))},
                  {"verified", verified}};
  json params = {{"center", point_config(o.center)},
                 {"resolved_center_state", ball.center.state.to_string()},
                 {"target", point_config(o.target)},
                 {"epsilon", o.epsilon}};
  r.write_report(r.config_echo(std::move(params)), results, timer);
  return verified ? kOk : kVerificationFailure;
}

struct SensitivityOptions {
  PointOptions point;
  std::string epsilon = "1/10";
  std::string delta;
};

int run_sensitivity(const Runner& r, const SensitivityOptions& o) {
  Timer timer;
  const auto cfg = r.system();
  const int n = cfg.n_bits();
  SplitMix64 rng(r.globals().rng_seed);
  const SystemPoint x(state_or_iv(o.point.state, n, rng, "state"),
                      parse_message(o.point.message, n, "sensitivity"));
  const auto eps = parse_exact(o.epsilon, "epsilon");
  const auto delta = o.delta.empty() ? Rational(n) : parse_exact(o.delta, "delta");
  if (eps <= 0 || eps >= 1) throw ConfigError("sensitivity guard: epsilon must lie in (0, 1)");
  if (delta > n) throw ConfigError("sensitivity guard: delta must be <= n-bits");
  const auto s = sensitivity_witness(cfg, x, eps, delta);
  const bool inside = in_ball(Ball(x, eps), s.perturbed);
  const bool verified = inside && s.achieved >= delta;
  timer.mark("sensitivity");

  json results = {{"point", point_to_json(x)},
                  {"perturbed", point_to_json(s.perturbed)},
                  {"steps", s.steps},
                  {"distance_at_start", r.exact(distance(x, s.perturbed))},
                  {"achieved", r.exact(s.achieved)},
                  {"delta", r.exact(delta)},
                  {"in_ball", inside},
                  {"verified", verified}};
  r.write_report(r.config_echo({{"point", point_config(o.point)},
                                {"resolved_state", x.state.to_string()},
                                {"epsilon", o.epsilon},
                                {"delta", to_fraction_string(delta)}}),
                 results, timer);
  return verified ? kOk : kVerificationFailure;
}

struct EntropyOptions {
  std::size_t n_max = 2;
  std::string epsilon = "1";
  std::size_t prefix_len = 2;
};

void run_entropy(const Runner& r, const EntropyOptions& o) {
  Timer timer;
  const auto cfg = r.system();
  const auto eps = parse_exact(o.epsilon, "epsilon");
  if (static_cast<std::size_t>(cfg.n_bits()) * (o.prefix_len + 1) > 20)
    throw ConfigError("entropy grid guard: 2^(n-bits * (prefix-len + 1)) exceeds 2^20 points");
  const auto profile = entropy_profile(cfg, o.n_max, eps, o.prefix_len, r.globals().workers);
  timer.mark("entropy");

  json rows = json::array();
  for (const auto& row : profile.rows) {
    json j = {{"n", row.n},
              {"greedy", row.greedy},
              {"exact", row.exact ? json(*row.exact) : json(nullptr)},
              {"h_lower", row.h_lower},
              {"rate", row.rate}};
    if (row.constructive_bound) {
      j["constructive_bound"] = row.constructive_bound->str();
      j["meets_constructive_bound"] = BigInt(row.h_lower) >= *row.constructive_bound;
    } else {
      j["constructive_bound"] = nullptr;
      j["meets_constructive_bound"] = nullptr;
    }
    rows.push_back(std::move(j));
  }
  json results = {{"grid_size", profile.grid_size},
                  {"epsilon", r.exact(profile.epsilon)},
                  {"prefix_len", profile.prefix_len},
                  {"rows", rows},
                  {"note",
                   "h_lower is a lower bound on H(n, epsilon) restricted to the candidate grid; "
                   "constructive_bound is 2^(nN) from the distinct-trajectory family"}};
  r.write_report(r.config_echo({{"n_max", o.n_max}, {"epsilon", o.epsilon}, {"prefix_len", o.prefix_len}}),
                 results, timer);
}

struct ProbeOptions {
  std::size_t horizon = 50;
  std::size_t samples = 100;
};

void run_probe(const Runner& r, const ProbeOptions& o) {
  Timer timer;
  const auto cfg = r.system();
  const auto p = expansivity_probe(cfg, o.horizon, o.samples, r.globals().rng_seed, r.globals().workers);
  timer.mark("probe");
  json results = {{"horizon", p.horizon},
                  {"samples", p.samples},
                  {"min_random", r.exact(p.min_random)},
                  {"min_compensating", r.exact(p.min_compensating)},
                  {"min_overall", r.exact(p.min_overall)},
                  {"min_initial_distance_compensating", r.exact(p.min_initial_distance_compensating)},
                  {"conclusive", p.conclusive},
                  {"note", p.note}};
  r.write_report(r.config_echo({{"horizon", o.horizon}, {"samples", o.samples}}), results, timer);
}

void add_point_options(CLI::App* app, PointOptions& p, const std::string& prefix,
                       const std::string& label) {
  app->add_option("--" + prefix + "state", p.state, label + " state bits (big-endian)");
  app->add_option("--" + prefix + "message", p.message.prefix,
                  label + " message prefix, comma-separated blocks");
  app->add_option("--" + prefix + "cycle", p.message.cycle,
                  label + " repeating message tail (default: all-zeros block)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamical-systems analysis of the CBC mode on toy block ciphers", kToolName};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  app.fallthrough();
  app.config_formatter(std::make_shared<cbcchaos::cli::ConfigJSON>());
  app.set_config("--config", "", "JSON config file; command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);

  GlobalOptions g;
  app.add_option("--cipher", g.cipher, "identity | permutation | feistel")
      ->check(CLI::IsMember({"identity", "permutation", "feistel"}))
      ->capture_default_str();
  app.add_option("--n-bits", g.n_bits, "block size N")->check(CLI::Range(1, kMaxBits))->capture_default_str();
  app.add_option("--seed", g.seed, "cipher key seed")->capture_default_str();
  app.add_option("--rounds", g.rounds, "feistel rounds")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--convention", g.convention, "xor | paper-complement")
      ->check(CLI::IsMember({"xor", "paper-complement"}))
      ->capture_default_str();
  app.add_option("--inner-function", g.inner_function, "negation | identity")
      ->check(CLI::IsMember({"negation", "identity"}))
      ->capture_default_str();
  app.add_option("--rng-seed", g.rng_seed, "seed for drawn IVs and sampled instances")->capture_default_str();
  app.add_option("--workers", g.workers, "worker threads (results do not depend on it)")
      ->check(CLI::Range(1U, 256U))
      ->capture_default_str();
  app.add_option("--out-dir", g.out_dir, "output directory (default: $CBC_CHAOS_OUT_DIR or .)");
  app.add_option("--report", g.report, "report path (default: <out-dir>/<command>.json)");
  app.add_option("--digits", g.digits, "decimal digits shown next to exact fractions")->capture_default_str();
  app.add_flag("--with-timings", g.with_timings, "add wall-clock timings to the report");

  GraphOptions graph_o;
  auto* graph = app.add_subcommand("graph", "transition graph and strong-connectivity verdict");
  graph->add_option("--dot", graph_o.dot, "write the graph in DOT format");
  graph->add_option("--adjacency", graph_o.adjacency, "write the JSON adjacency");

  SimulateOptions sim_o;
  auto* simulate = app.add_subcommand("simulate", "iterate the CBC map and dump the trajectory");
  simulate->add_option("--iv", sim_o.iv, "initial state (default: drawn from --rng-seed)");
  simulate->add_option("--message", sim_o.message.prefix, "message prefix, comma-separated blocks");
  simulate->add_option("--cycle", sim_o.message.cycle, "repeating message tail (default: zeros)");
  simulate->add_option("--steps", sim_o.steps, "number of blocks to process")->capture_default_str();
  simulate->add_option("--csv", sim_o.csv, "trajectory CSV path (default: <out-dir>/trajectory.csv)");

  DistanceOptions dist_o;
  auto* dist = app.add_subcommand("distance", "exact distances between two points");
  add_point_options(dist, dist_o.x, "x-", "first point");
  add_point_options(dist, dist_o.y, "y-", "second point");
  dist->add_option("--bowen-n", dist_o.bowen_n, "horizon of the Bowen distance")->capture_default_str();

  MixOptions mix_o;
  auto* mix = app.add_subcommand("mix", "construct and verify a mixing witness");
  add_point_options(mix, mix_o.center, "center-", "ball center (state drawn from --rng-seed if absent)");
  add_point_options(mix, mix_o.target, "target-", "target");
  mix->add_option("--epsilon", mix_o.epsilon, "ball radius as an exact fraction, < 1")->capture_default_str();

  SensitivityOptions sens_o;
  auto* sens = app.add_subcommand("sensitivity", "construct a sensitivity witness");
  add_point_options(sens, sens_o.point, "", "point (state drawn from --rng-seed if absent)");
  sens->add_option("--epsilon", sens_o.epsilon, "neighbourhood radius, exact fraction in (0, 1)")
      ->capture_default_str();
  sens->add_option("--delta", sens_o.delta, "required orbit distance (default: N)");

  EntropyOptions ent_o;
  auto* ent = app.add_subcommand("entropy", "separated-set lower bounds for H(n, epsilon)");
  ent->add_option("--n-max", ent_o.n_max, "largest n")->check(CLI::PositiveNumber)->capture_default_str();
  ent->add_option("--epsilon", ent_o.epsilon, "separation as an exact fraction")->capture_default_str();
  ent->add_option("--prefix-len", ent_o.prefix_len, "message blocks enumerated per candidate")
      ->capture_default_str();

  ProbeOptions probe_o;
  auto* probe = app.add_subcommand("probe-expansivity", "bounded-horizon expansivity probe");
  probe->add_option("--horizon", probe_o.horizon, "iterations per pair")->check(CLI::PositiveNumber)->capture_default_str();
  probe->add_option("--samples", probe_o.samples, "pairs of each kind")->check(CLI::PositiveNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ConfigError& e) {
    std::string what = e.what();
    const std::string prefix = "INI was not able to parse ";
    if (what.rfind(prefix, 0) == 0) what = "unknown config key '" + what.substr(prefix.size()) + "'";
    std::cerr << kToolName << ": config error: " << what << "\n";
    return kConfigError;
  } catch (const CLI::ParseError& e) {
    std::cerr << kToolName << ": config error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    const Runner runner(g, command);
    int code = kOk;
    if (command == "graph") run_graph(runner, graph_o);
    else if (command == "simulate") run_simulate(runner, sim_o);
    else if (command == "distance") run_distance(runner, dist_o);
    else if (command == "mix") code = run_mix(runner, mix_o);
    else if (command == "sensitivity") code = run_sensitivity(runner, sens_o);
    else if (command == "entropy") run_entropy(runner, ent_o);
    else if (command == "probe-expansivity") run_probe(runner, probe_o);
    if (code == kVerificationFailure) std::cerr << kToolName << ": verification failed\n";
    return code;
  } catch (const ConfigError& e) {
    std::cerr << kToolName << ": config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << kToolName << ": config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::logic_error& e) {
    std::cerr << kToolName << ": verification failed: " << e.what() << "\n";
    return kVerificationFailure;
  } catch (const std::exception& e) {
    std::cerr << kToolName << ": error: " << e.what() << "\n";
    return 1;
  }
}
