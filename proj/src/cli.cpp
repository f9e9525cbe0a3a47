// Copyright 2026 The pgroup Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pgroup/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pgroup/error.hpp"
#include "pgroup/gflownet.hpp"
#include "pgroup/graph.hpp"
#include "pgroup/hamiltonian_io.hpp"
#include "pgroup/measurement.hpp"
#include "pgroup/report.hpp"

namespace pgroup {

namespace {

using ojson = nlohmann::ordered_json;

const std::vector<std::string> kMethodNames = {"full",      "greedy-lf", "greedy-dsat",
                                               "greedy-rs", "exact",     "gflownet"};
const std::vector<std::string> kCompareDefault = {"full", "greedy-lf", "greedy-dsat", "greedy-rs",
                                                  "gflownet"};

struct RunOptions {
  std::string input;
  std::string system;
  std::string mode = "fc";
  std::vector<std::string> methods;
  double epsilon = kChemicalAccuracy;
  double lambda0 = kDefaultLambda0;
  std::uint64_t seed = 0;
  std::size_t iterations = 1000;
  std::size_t trajectories = 16;
  int mask_extra = 0;
  std::vector<std::size_t> hidden{512, 512};
  double learning_rate = 3e-4;
  std::size_t accumulate = 10;
  double stop_loss = 0.0;
  std::size_t lookahead = kDefaultLookaheadBudget;
  std::size_t vertex_limit = kDefaultExactVertexLimit;
  std::string checkpoint;
  std::string resume;
  std::string log;
  std::string out;
  bool deterministic = false;
};

struct HistogramOptions {
  std::string checkpoint;
  std::size_t samples = 0;
  std::string out;
  double bin_width = 0.0;
  std::uint64_t seed = 0;
};

struct ExportOptions {
  std::string input;
  std::string mode = "fc";
  std::string coloring;
  std::string method;
  std::string out;
  double epsilon = kChemicalAccuracy;
};

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path + " for writing");
  return f;
}

MethodRecord score(const std::string& method, const QubitHamiltonian& h, const CompatGraph& g,
                   const Coloring& raw, const RunOptions& o) {
  MethodRecord r;
  r.method = method;
  r.coloring = raw.canonical();
  r.color_count = r.coloring.max_color();
  r.m_est = estimate_measurements(h, coloring_to_grouping(g, r.coloring), o.epsilon);
  r.reward = reward_from(h.size(), r.color_count, r.m_est, o.lambda0);
  return r;
}

ojson sample_json(const SampleRecord& s) {
  return {{"color_count", s.coloring.max_color()},
          {"m_est", s.m_est},
          {"reward", s.reward},
          {"coloring", s.coloring.colors()}};
}

TrainConfig train_config(const RunOptions& o) {
  TrainConfig cfg;
  cfg.iterations = o.iterations;
  cfg.trajectories_per_iteration = o.trajectories;
  cfg.seed = o.seed;
  cfg.mask_extra_colors = o.mask_extra;
  cfg.measurement = {o.epsilon, o.lambda0};
  cfg.mode = parse_mode(o.mode);
  cfg.hidden_layers = o.hidden;
  cfg.adam.learning_rate = o.learning_rate;
  cfg.adam.accumulation_period = o.accumulate;
  cfg.lookahead_budget = o.lookahead;
  cfg.stop_loss = o.stop_loss;
  return cfg;
}

MethodRecord run_gflownet(const QubitHamiltonian& h, const CompatGraph& g, const RunOptions& o) {
  std::ofstream log;
  if (!o.log.empty()) {
    log = open_output(o.log);
    log << "iteration,mean_loss,best_reward,best_m_est,best_color_count\n";
  }
  auto on_iteration = [&](const IterationLog& it) {
    if (!log.is_open()) return;
    log << it.iteration << ',' << format_double(it.mean_loss) << ','
        << format_double(it.best_reward) << ',' << format_double(it.best_m_est) << ','
        << it.best_color_count << '\n';
  };

  std::optional<TrainResult> result;
  if (!o.resume.empty()) {
    TrainedSampler sampler = TrainedSampler::load(std::filesystem::path(o.resume));
    if (!(sampler.hamiltonian() == h)) {
      throw InvalidArgument("checkpoint " + o.resume + " was trained on a different Hamiltonian");
    }
    if (sampler.config().mode != parse_mode(o.mode)) {
      throw InvalidArgument("checkpoint " + o.resume + " uses a different commutation mode");
    }
    result.emplace(resume_training(std::move(sampler), o.iterations, on_iteration));
  } else {
    result.emplace(train(h, train_config(o), on_iteration));
  }
  if (!o.checkpoint.empty()) result->sampler.save(std::filesystem::path(o.checkpoint));

  MethodRecord r = score("gflownet", h, g, result->best_by_m_est.coloring, o);
  r.details = {{"iterations_done", result->sampler.iterations_done()},
               {"color_cap", result->sampler.mdp().color_cap()},
               {"greedy_cap_colors", result->sampler.greedy_cap_colors()},
               {"final_mean_loss", result->log.empty() ? 0.0 : result->log.back().mean_loss},
               {"distinct_colorings_seen", result->seen.size()},
               {"best_by_reward", sample_json(result->best_by_reward)}};
  return r;
}

MethodRecord run_method(const std::string& method, const QubitHamiltonian& h,
                        const CompatGraph& g, const RunOptions& o) {
  if (method == "full") {
    Coloring singletons(h.size());
    for (std::size_t v = 0; v < h.size(); ++v) singletons[v] = static_cast<int>(v) + 1;
    return score(method, h, g, singletons, o);
  }
  if (method == "greedy-lf") {
    return score(method, h, g, greedy_color(g, GreedyStrategy::LargestFirst), o);
  }
  if (method == "greedy-dsat") {
    return score(method, h, g, greedy_color(g, GreedyStrategy::Dsatur), o);
  }
  if (method == "greedy-rs") {
    return score(method, h, g, greedy_color(g, GreedyStrategy::RandomSequential, o.seed), o);
  }
  if (method == "exact") return score(method, h, g, exact_min_colors(g, o.vertex_limit), o);
  if (method == "gflownet") return run_gflownet(h, g, o);
  throw InvalidArgument("unknown method '" + method + "'");
}

ojson config_echo(const RunOptions& o, const std::vector<std::string>& methods) {
  return {{"input", o.input},
          {"methods", methods},
          {"iterations", o.iterations},
          {"trajectories_per_iteration", o.trajectories},
          {"mask_extra_colors", o.mask_extra},
          {"hidden_layers", o.hidden},
          {"learning_rate", o.learning_rate},
          {"accumulation_period", o.accumulate},
          {"stop_loss", o.stop_loss},
          {"lookahead_budget", o.lookahead},
          {"vertex_limit", o.vertex_limit},
          {"resume", o.resume.empty() ? ojson(nullptr) : ojson(o.resume)}};
}

int run_experiment(const RunOptions& o, std::ostream& out, std::ostream& err) {
  if (o.input.empty() && o.resume.empty()) throw InvalidArgument("--input is required");
  const CommutationMode mode = parse_mode(o.mode);
  MeasurementConfig{o.epsilon, o.lambda0}.validate();

  const QubitHamiltonian h = o.input.empty()
                                 ? TrainedSampler::load(std::filesystem::path(o.resume)).hamiltonian()
                                 : load_hamiltonian_file(o.input);
  if (h.size() == 0) throw EmptyInputError("Hamiltonian has no non-identity terms");
  const CompatGraph g = build_complement_graph(h, mode);

  const std::vector<std::string>& methods = o.methods;

  RunReport report;
  report.system = o.system.empty()
                      ? std::filesystem::path(o.input.empty() ? o.resume : o.input).stem().string()
                      : o.system;
  report.n_terms = h.size();
  report.n_qubits = h.n_qubits();
  report.mode = mode;
  report.epsilon = o.epsilon;
  report.lambda0 = o.lambda0;
  report.seed = o.seed;
  report.config = config_echo(o, methods);
  for (const std::string& m : methods) {
    const auto t0 = std::chrono::steady_clock::now();
    MethodRecord r = run_method(m, h, g, o);
    if (!o.deterministic) {
      r.wall_time_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    report.methods.push_back(std::move(r));
  }
  report.reduction_factor = reduction_factor(report.methods);
  if (!o.deterministic) report.generated_at = utc_timestamp();

  const std::string json = to_json(report).dump(2) + "\n";
  const std::string table = render_table(report);
  if (o.out.empty()) {
    out << json;
    err << table;
  } else {
    std::ofstream f = open_output(o.out);
    f << json;
    if (!f) throw Error("failed to write " + o.out);
    out << table;
  }
  return kExitOk;
}

int run_histogram(const HistogramOptions& o, std::ostream& out) {
  if (o.samples < 1) throw InvalidArgument("--samples must be >= 1");
  if (o.bin_width < 0 || !std::isfinite(o.bin_width)) {
    throw InvalidArgument("--bin-width must be a positive number");
  }
  const TrainedSampler sampler = TrainedSampler::load(std::filesystem::path(o.checkpoint));
  Rng rng(o.seed);
  const std::vector<SampleRecord> samples = sample_groupings(sampler, o.samples, rng);

  double lo = samples.front().m_est;
  double hi = lo;
  for (const SampleRecord& s : samples) {
    lo = std::min(lo, s.m_est);
    hi = std::max(hi, s.m_est);
  }
  double width = o.bin_width > 0 ? o.bin_width : (hi - lo) / 100.0;
  if (!(width > 0)) width = 1.0;

  // Rows are (max_color, bin lower edge); the top edge folds into the last bin.
  const auto last_bin = static_cast<long long>(std::floor((hi - lo) / width));
  std::map<std::pair<int, long long>, std::size_t> bins;
  for (const SampleRecord& s : samples) {
    const long long b = std::min(last_bin, static_cast<long long>(std::floor((s.m_est - lo) / width)));
    ++bins[{s.coloring.max_color(), b}];
  }

  std::ostringstream csv;
  csv << "max_color,m_est,count\n";
  for (const auto& [key, count] : bins) {
    csv << key.first << ',' << format_double(lo + static_cast<double>(key.second) * width) << ','
        << count << '\n';
  }
  if (o.out.empty()) {
    out << csv.str();
  } else {
    std::ofstream f = open_output(o.out);
    f << csv.str();
  }
  return kExitOk;
}

std::vector<int> read_coloring(const std::string& path, const std::string& method) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open coloring file " + path);
  nlohmann::json j;
  try {
    in >> j;
    if (j.is_array()) return j.get<std::vector<int>>();
    if (j.contains("coloring")) return j.at("coloring").get<std::vector<int>>();
    if (j.contains("methods")) {
      const auto& methods = j.at("methods");
      if (methods.empty()) throw FormatError(0, "report lists no methods");
      const auto pick = [&](const std::string& name) -> const nlohmann::json* {
        for (const auto& m : methods) {
          if (m.at("method").get<std::string>() == name) return &m;
        }
        return nullptr;
      };
      const nlohmann::json* chosen = method.empty() ? pick("gflownet") : pick(method);
      if (!chosen && !method.empty()) throw InvalidArgument("report has no method '" + method + "'");
      if (!chosen) chosen = &methods.front();
      return chosen->at("coloring").get<std::vector<int>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed coloring file " + path + ": " + e.what());
  }
  throw Error("coloring file " + path + " holds no coloring");
}

int run_export(const ExportOptions& o, std::ostream& out, std::ostream& err) {
  const QubitHamiltonian h = load_hamiltonian_file(o.input);
  const CompatGraph g = build_complement_graph(h, parse_mode(o.mode));
  const Coloring coloring(read_coloring(o.coloring, o.method));

  bool valid = false;
  try {
    valid = validate_coloring(g, coloring);
  } catch (const DimensionError& e) {
    err << "invalid coloring: " << e.what() << '\n';
    return kExitInvalidColoring;
  } catch (const IncompleteColoringError& e) {
    err << "invalid coloring: " << e.what() << '\n';
    return kExitInvalidColoring;
  }
  if (!valid) {
    err << "invalid coloring: two incompatible terms share a color\n";
    return kExitInvalidColoring;
  }

  // Canonical labels make permuted colorings render identically.
  const Coloring canon = coloring.canonical();
  const double m_est = estimate_measurements(h, coloring_to_grouping(g, canon), o.epsilon);
  char label[160];
  std::snprintf(label, sizeof(label), "%s grouping, %d colors, M_est = %.6g (%.4f million)",
                o.mode == "qwc" ? "QWC" : "FC", canon.max_color(), m_est, m_est / 1e6);

  std::ostringstream dot;
  write_dot(dot, g, h, canon, label);
  if (o.out.empty()) {
    out << dot.str();
  } else {
    std::ofstream f = open_output(o.out);
    f << dot.str();
  }
  return kExitOk;
}

void add_experiment_flags(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("--input,-i", o.input, "Hamiltonian file")->check(CLI::ExistingFile);
  cmd->add_option("--system", o.system, "System name for the report (default: input stem)");
  cmd->add_option("--mode", o.mode, "Commutation relation")
      ->check(CLI::IsMember({"fc", "qwc"}))
      ->capture_default_str();
  cmd->add_option("--epsilon", o.epsilon, "Target accuracy in Hartree")->capture_default_str();
  cmd->add_option("--lambda0", o.lambda0, "Reward scale of 1/M_est")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Seed for all random streams")->capture_default_str();
  cmd->add_option("--iterations", o.iterations, "GFlowNet training iterations")
      ->capture_default_str();
  cmd->add_option("--traj-per-iter", o.trajectories, "Trajectories per iteration")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--mask-extra", o.mask_extra, "Colors allowed above the greedy count")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--hidden", o.hidden, "Hidden layer widths")->delimiter(',');
  cmd->add_option("--learning-rate", o.learning_rate, "Adam step size")->capture_default_str();
  cmd->add_option("--accumulate", o.accumulate, "Gradients averaged per optimizer step")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--stop-loss", o.stop_loss, "Stop once the 10-iteration mean loss is below")
      ->capture_default_str();
  cmd->add_option("--lookahead", o.lookahead, "Completability search budget, 0 disables")
      ->capture_default_str();
  cmd->add_option("--vertex-limit", o.vertex_limit, "Largest graph the exact method accepts")
      ->capture_default_str();
  cmd->add_option("--checkpoint", o.checkpoint, "Write the trained sampler here");
  cmd->add_option("--resume", o.resume, "Continue training from a checkpoint")
      ->check(CLI::ExistingFile);
  cmd->add_option("--log", o.log, "Per-iteration training CSV");
  cmd->add_option("--out,-o", o.out, "Write the JSON report here instead of stdout");
  cmd->add_flag("--deterministic", o.deterministic, "Omit timestamps and wall times");
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Measurement grouping of qubit Hamiltonians", "pgroup"};
  app.require_subcommand(1);

  RunOptions group_opts;
  std::string group_method;
  CLI::App* group = app.add_subcommand("group", "Group one Hamiltonian with one method");
  add_experiment_flags(group, group_opts);
  group->add_option("--method,-m", group_method, "Method")
      ->required()
      ->check(CLI::IsMember(kMethodNames));

  RunOptions compare_opts;
  CLI::App* compare = app.add_subcommand("compare", "Run several methods and tabulate them");
  add_experiment_flags(compare, compare_opts);
  compare->add_option("--methods", compare_opts.methods, "Comma-separated methods")
      ->delimiter(',')
      ->check(CLI::IsMember(kMethodNames))
      ->default_str("full,greedy-lf,greedy-dsat,greedy-rs,gflownet");

  HistogramOptions hist_opts;
  CLI::App* hist = app.add_subcommand("histogram", "Sample a trained checkpoint");
  hist->add_option("--checkpoint", hist_opts.checkpoint, "Sampler checkpoint")
      ->required()
      ->check(CLI::ExistingFile);
  hist->add_option("--samples", hist_opts.samples, "Number of samples")->required();
  hist->add_option("--out,-o", hist_opts.out, "CSV output (default stdout)");
  hist->add_option("--bin-width", hist_opts.bin_width, "M_est bin width (default range/100)");
  hist->add_option("--seed", hist_opts.seed, "Sampling seed")->capture_default_str();

  ExportOptions export_opts;
  CLI::App* exp = app.add_subcommand("export-graph", "Write a colored complement graph as DOT");
  exp->add_option("--input,-i", export_opts.input, "Hamiltonian file")
      ->required()
      ->check(CLI::ExistingFile);
  exp->add_option("--mode", export_opts.mode, "Commutation relation")
      ->check(CLI::IsMember({"fc", "qwc"}))
      ->capture_default_str();
  exp->add_option("--coloring", export_opts.coloring,
                  "JSON coloring: an array, an object with \"coloring\", or a report")
      ->required()
      ->check(CLI::ExistingFile);
  exp->add_option("--method", export_opts.method, "Method record to take from a report");
  exp->add_option("--epsilon", export_opts.epsilon, "Target accuracy in Hartree")
      ->capture_default_str();
  exp->add_option("--out,-o", export_opts.out, "DOT output (default stdout)");

  std::vector<const char*> argv{"pgroup"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (group->parsed()) {
      group_opts.methods = {group_method};
      return run_experiment(group_opts, out, err);
    }
    if (compare->parsed()) {
      if (compare_opts.methods.empty()) compare_opts.methods = kCompareDefault;
      return run_experiment(compare_opts, out, err);
    }
    if (hist->parsed()) return run_histogram(hist_opts, out);
    if (exp->parsed()) return run_export(export_opts, out, err);
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace pgroup
