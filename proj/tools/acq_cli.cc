// Copyright 2026 The acqgraph Authors
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

// Command-line front end: sampling, exact solving, construction, trace
// verification and batch experiments. Exit codes: 0 on completion, 1 when a
// verification or run fails, 2 on a configuration error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "acq/acquisition.h"
#include "acq/exact_solver.h"
#include "acq/experiment.h"
#include "acq/graph.h"
#include "acq/random.h"
#include "acq/random_process.h"
#include "acq/spanning_protocol.h"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kConfigError = 2;

// Relative output paths land under $ACQ_OUTPUT_DIR when it is set.
std::string OutputPath(const std::string& path) {
  if (path.empty()) return path;
  const char* dir = std::getenv(acq::kOutputDirEnv);
  if (dir == nullptr || *dir == '\0' ||
      std::filesystem::path(path).is_absolute()) {
    return path;
  }
  return (std::filesystem::path(dir) / path).string();
}

std::ofstream OpenOutput(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw acq::ConfigError("cannot write " + path);
  return out;
}

struct Common {
  std::vector<std::size_t> n{1000};
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  std::string mode = "practical";
  std::string omega = "lnln";
  std::vector<double> c_values;
  std::string out;
  std::string trace_dir;
  std::size_t jobs = 1;
  bool timing = false;
};

acq::ExperimentConfig ToConfig(const Common& o) {
  acq::ExperimentConfig config;
  config.n_values = o.n;
  config.trials = o.trials;
  config.seed = o.seed;
  config.mode = acq::ParseProtocolMode(o.mode);
  config.omega = acq::OmegaSpec::Parse(o.omega);
  config.c_values = o.c_values;
  config.out = OutputPath(o.out);
  config.trace_dir = OutputPath(o.trace_dir);
  config.jobs = o.jobs;
  config.record_timing = o.timing;
  config.Validate();
  return config;
}

// Builds the G(n, M) of a seeded trial, as RunTrial does.
acq::TrialRun TrialFromSeed(std::size_t n, std::uint64_t seed,
                            const std::optional<std::size_t>& index,
                            const std::string& mode, const std::string& omega) {
  if (n < 2) throw acq::ConfigError("n must be at least 2");
  const std::uint64_t trial_seed =
      index ? acq::TrialSeed(seed, n, *index) : seed;
  const auto params =
      acq::ProtocolParams::ForMode(acq::ParseProtocolMode(mode), n);
  return acq::RunTrialDetailed(n, index.value_or(0), trial_seed, params,
                               acq::OmegaSpec::Parse(omega));
}

int RunBatch(const Common& o, bool sweep) {
  acq::ExperimentConfig config = ToConfig(o);
  if (sweep && config.c_values.empty()) {
    throw acq::ConfigError("sweep needs --c-values");
  }
  if (!sweep) config.c_values.clear();
  const auto records = acq::RunExperiment(config);
  const auto summary = acq::Summarize(records);
  acq::WriteSummaryText(summary, std::cout);
  return summary.spot_check.problems.empty() ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acquisition games on graphs and random graph experiments"};
  app.require_subcommand(1);

  // sample
  std::size_t sample_n = 1000;
  std::uint64_t sample_seed = 1;
  std::optional<std::size_t> sample_index;
  std::string sample_omega = "lnln";
  std::string sample_out;
  std::string sample_prefix = "M";
  auto* sample = app.add_subcommand(
      "sample", "Sample an edge stream and report K, M and degree statistics");
  sample->add_option("--n", sample_n, "Number of vertices");
  sample->add_option("--seed", sample_seed, "Trial seed (master with --index)");
  sample->add_option("--index", sample_index, "Trial index under the master");
  sample->add_option("--omega", sample_omega, "lnln or a constant");
  sample->add_option("--out", sample_out, "Write the sampled graph here");
  sample->add_option("--prefix", sample_prefix, "Graph to write: K or M")
      ->check(CLI::IsMember({"K", "M"}));

  // solve-exact
  std::string solve_graph;
  std::string solve_variant = "unit";
  std::size_t solve_cap = 0;
  auto* solve = app.add_subcommand("solve-exact",
                                   "Exact acquisition number of a small graph");
  solve->add_option("--graph", solve_graph, "Edge-list file")->required();
  solve->add_option("--variant", solve_variant, "unit or total")
      ->check(CLI::IsMember({"unit", "total"}));
  solve->add_option("--cap", solve_cap, "Override the vertex cap");

  // construct
  std::size_t construct_n = 1000;
  std::uint64_t construct_seed = 1;
  std::optional<std::size_t> construct_index;
  std::string construct_mode = "practical";
  std::string construct_omega = "lnln";
  std::string construct_trace;
  std::string construct_dot;
  auto* construct = app.add_subcommand(
      "construct", "Build the spanning tree on G(n, M) and emit the protocol");
  construct->add_option("--n", construct_n, "Number of vertices");
  construct->add_option("--seed", construct_seed,
                        "Trial seed (master with --index)");
  construct->add_option("--index", construct_index,
                        "Trial index under the master");
  construct->add_option("--mode", construct_mode, "paper or practical");
  construct->add_option("--omega", construct_omega, "lnln or a constant");
  construct->add_option("--trace", construct_trace,
                        "Write the move trace here ('-' for stdout)");
  construct->add_option("--dot", construct_dot,
                        "Write the labeled tree as DOT");

  // verify
  std::string verify_trace;
  std::string verify_graph;
  std::size_t verify_n = 0;
  std::uint64_t verify_seed = 1;
  std::optional<std::size_t> verify_index;
  auto* verify = app.add_subcommand(
      "verify", "Replay a trace from all-ones and report the residual set");
  verify->add_option("trace", verify_trace, "Trace file (text or JSON)")
      ->required();
  verify->add_option("--graph", verify_graph, "Edge-list file");
  verify->add_option("--n", verify_n, "Use the G(n, M) of a seeded trial");
  verify->add_option("--seed", verify_seed, "Trial seed (master with --index)");
  verify->add_option("--index", verify_index, "Trial index under the master");

  // run and sweep
  Common run_options;
  Common sweep_options;
  auto add_batch = [](CLI::App* cmd, Common& o) {
    cmd->add_option("--n", o.n, "Vertex counts")->delimiter(',');
    cmd->add_option("--trials", o.trials, "Trials per point");
    cmd->add_option("--seed", o.seed, "Master seed");
    cmd->add_option("--mode", o.mode, "paper or practical");
    cmd->add_option("--omega", o.omega, "lnln or a constant");
    cmd->add_option("--out", o.out, "JSON-lines record file");
    cmd->add_option("--trace-dir", o.trace_dir, "Directory for trace files");
    cmd->add_option("--jobs", o.jobs, "Worker threads");
    cmd->add_flag("--timing", o.timing, "Record wall time per trial");
  };
  auto* run = app.add_subcommand(
      "run", "Seeded trials on the hitting-time graph G(n, M)");
  add_batch(run, run_options);
  auto* sweep =
      app.add_subcommand("sweep", "Threshold sweep over p = (ln n + c) / n");
  add_batch(sweep, sweep_options);
  sweep->add_option("--c-values", sweep_options.c_values, "Sweep points")
      ->delimiter(',')
      ->required();

  // summarize
  std::vector<std::string> summarize_inputs;
  std::string summarize_csv;
  bool summarize_no_check = false;
  auto* summarize = app.add_subcommand(
      "summarize", "Aggregate record files into a summary table");
  summarize->add_option("records", summarize_inputs, "Record files")
      ->required();
  summarize->add_option("--csv", summarize_csv, "Write the CSV table here");
  summarize->add_flag("--no-spot-check", summarize_no_check,
                      "Skip re-running the sampled successes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*sample) {
      if (sample_n < 2) throw acq::ConfigError("n must be at least 2");
      const std::uint64_t seed =
          sample_index ? acq::TrialSeed(sample_seed, sample_n, *sample_index)
                       : sample_seed;
      const acq::OmegaSpec omega = acq::OmegaSpec::Parse(sample_omega);
      // Same sub-seeds as a trial, so the numbers match its record.
      acq::EdgeStream stream(sample_n, acq::DeriveSeed(seed, 1));
      const double p_minus = acq::PMinus(sample_n, omega.Evaluate(sample_n));
      const std::uint64_t k =
          acq::GnpPrefixLength(stream, p_minus, acq::DeriveSeed(seed, 2));
      const std::uint64_t m = acq::HittingTimeConnectivity(stream);
      const acq::Graph base = stream.PrefixGraph(k);
      const acq::DegreeStats stats = acq::ComputeDegreeStats(base);
      const acq::DegreeLemmaReport report =
          acq::CheckDegreeLemmas(stats, sample_n);
      Json j;
      j["n"] = sample_n;
      j["seed"] = seed;
      j["omega"] = omega.ToString();
      j["p_minus"] = p_minus;
      j["K"] = k;
      j["M"] = m;
      j["base_components"] = acq::ConnectedComponents(base).size();
      j["max_degree"] = stats.max_degree;
      j["max_degree_bound"] = report.max_degree_bound;
      for (const auto& check : report.degree_counts) {
        j["degree_counts"].push_back(
            {{"k", check.k}, {"count", check.count}, {"bound", check.bound}});
      }
      j["degree_lemmas_ok"] = report.all_ok();
      std::cout << j.dump(2) << '\n';
      if (!sample_out.empty()) {
        std::ofstream out = OpenOutput(OutputPath(sample_out));
        acq::WriteEdgeList(stream.PrefixGraph(sample_prefix == "K" ? k : m),
                           out);
      }
      return kOk;
    }

    if (*solve) {
      const acq::Graph g = acq::ReadEdgeListFile(solve_graph);
      const acq::MoveKind variant = acq::ParseMoveKind(solve_variant);
      acq::SolverOptions options;
      if (solve_cap > 0) options.unit_cap = options.total_cap = solve_cap;
      const acq::SolveResult result =
          acq::AcquisitionNumberExact(g, variant, options);
      std::cout << "value " << result.value << '\n'
                << "explored " << result.explored << '\n';
      acq::WriteTraceText(result.witness, std::cout);
      return kOk;
    }

    if (*construct) {
      const acq::TrialRun trial =
          TrialFromSeed(construct_n, construct_seed, construct_index,
                        construct_mode, construct_omega);
      const acq::ConstructionResult& result = trial.construction;
      Json j;
      j["n"] = construct_n;
      j["seed"] = trial.record.seed;
      j["K"] = trial.record.k;
      j["M"] = trial.record.m;
      j["success"] = result.success;
      j["root"] = result.root;
      j["attempts"] = result.attempts;
      j["retries_used"] = result.retries_used;
      j["residual_size"] = result.residual_size;
      j["root_weight"] = result.root_weight;
      j["diagnostics"] =
          Json::parse(acq::DiagnosticsToJson(result.diagnostics));
      std::cout << j.dump(2) << '\n';
      if (construct_trace == "-") {
        acq::WriteTraceText(result.trace, std::cout);
      } else if (!construct_trace.empty()) {
        std::ofstream out = OpenOutput(OutputPath(construct_trace));
        acq::WriteTraceText(result.trace, out);
      }
      if (!construct_dot.empty()) {
        std::ofstream out = OpenOutput(OutputPath(construct_dot));
        acq::WriteTreeDot(result.tree, out);
      }
      return result.success ? kOk : kFailed;
    }

    if (*verify) {
      if (verify_graph.empty() == (verify_n == 0)) {
        throw acq::ConfigError("verify needs exactly one of --graph or --n");
      }
      const acq::Graph g =
          verify_graph.empty()
              ? TrialFromSeed(verify_n, verify_seed, verify_index, "practical",
                              "lnln")
                    .graph
              : acq::ReadEdgeListFile(verify_graph);
      std::ifstream in(verify_trace);
      if (!in) throw acq::ConfigError("cannot open " + verify_trace);
      const acq::RationalTrace trace = acq::ReadTrace(in);
      try {
        const acq::RationalConfig end = acq::Replay<acq::Rational>(
            g, acq::RationalConfig::AllOnes(g.num_vertices()), trace);
        const auto support = acq::ResidualSupport(end);
        std::cout << "moves " << trace.size() << '\n'
                  << "residual_size " << support.size() << '\n'
                  << "residual";
        for (acq::Vertex v : support) std::cout << ' ' << v;
        std::cout << '\n'
                  << "terminal "
                  << (acq::IsIndependentSupport(g, end) ? "yes" : "no") << '\n';
      } catch (const acq::ReplayError& e) {
        std::cout << "illegal: " << e.what() << '\n';
        return kFailed;
      }
      return kOk;
    }

    if (*run) return RunBatch(run_options, false);
    if (*sweep) return RunBatch(sweep_options, true);

    if (*summarize) {
      std::vector<acq::TrialRecord> records;
      for (const std::string& path : summarize_inputs) {
        std::ifstream in(path);
        if (!in) throw acq::ConfigError("cannot open " + path);
        auto part = acq::ReadRecords(in);
        records.insert(records.end(), part.begin(), part.end());
      }
      if (records.empty()) throw acq::ConfigError("no records to summarize");
      const acq::Summary summary = acq::Summarize(records, !summarize_no_check);
      acq::WriteSummaryText(summary, std::cout);
      if (!summarize_csv.empty()) {
        std::ofstream out = OpenOutput(OutputPath(summarize_csv));
        acq::WriteSummaryCsv(summary, out);
      }
      return summary.spot_check.problems.empty() ? kOk : kFailed;
    }
  } catch (const std::invalid_argument& e) {
    // ConfigError, GraphError, SolverCapError and malformed inputs.
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kOk;
}
