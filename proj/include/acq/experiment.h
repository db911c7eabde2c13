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

#ifndef ACQ_EXPERIMENT_H_
#define ACQ_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "acq/acquisition.h"
#include "acq/random_process.h"
#include "acq/spanning_protocol.h"

namespace acq {

// Invalid experiment configuration (CLI exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "ACQ_OUTPUT_DIR";

struct ExperimentConfig {
  std::vector<std::size_t> n_values{1000};
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  ProtocolMode mode = ProtocolMode::kPractical;
  OmegaSpec omega;
  std::vector<double> c_values;  // nonempty: threshold sweep
  std::string out;               // JSON-lines record file; empty: none
  std::string trace_dir;         // per-trial trace files; empty: none
  std::size_t jobs = 1;
  bool record_timing = false;  // wall time breaks bit-exact reruns

  // Throws ConfigError.
  void Validate() const;
};

struct TrialRecord {
  std::string kind = "trial";  // "trial" (hitting-time graph) or "sweep"
  std::size_t n = 0;
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::string mode;
  std::string omega;
  std::optional<double> c;  // sweep: p = (ln n + c) / n
  std::optional<double> p;  // sweep: edge probability
  double p_minus = 0.0;
  std::uint64_t k = 0;      // prefix length of the p_- base graph
  std::uint64_t m = 0;      // hitting time (trial) or G(n,p) length (sweep)
  bool m_verified = false;  // trial: prefix M connected, M-1 not
  std::size_t base_components = 0;
  std::size_t isolated = 0;    // degree-0 vertices of the base graph
  std::size_t components = 0;  // of the graph the construction runs on
  bool connected = false;
  std::size_t max_degree = 0;                  // base graph
  std::vector<std::size_t> low_degree_counts;  // base graph, degrees 0..2
  bool degree_lemmas_ok = false;
  bool attempted = false;  // sweep: false when disconnected
  bool success = false;
  std::size_t retries_used = 0;
  Vertex root = kNoVertex;
  std::size_t residual_size = 0;  // 0 when not attempted
  std::int64_t root_weight = 0;
  std::size_t residual_lower_bound = 0;  // component count
  std::string phase_reached;
  std::optional<std::string> failure_reason;
  std::size_t trace_length = 0;
  std::string trace_digest;  // FNV-1a of the text trace, hex
  std::string trace_file;
  std::string diagnostics;  // compact diagnostics JSON
  std::optional<double> wall_seconds;
};

std::string RecordToJson(const TrialRecord& r);
TrialRecord RecordFromJson(const std::string& line);
std::vector<TrialRecord> ReadRecords(std::istream& in);
void WriteRecords(const std::vector<TrialRecord>& records, std::ostream& out);

// Seed of trial `index` at size n: fixed by the master seed alone, so it does
// not depend on the job count or on the other sizes in the config.
std::uint64_t TrialSeed(std::uint64_t master, std::size_t n, std::size_t index);

std::string TraceDigest(const IntTrace& trace);

// A trial with the objects behind its record.
struct TrialRun {
  TrialRecord record;
  Graph graph;                      // the graph the construction ran on
  ConstructionResult construction;  // empty when not attempted
};

// Full pipeline on one seed: edge stream, K, M, construction on G(n, M),
// replay verification. Failures are recorded, never thrown.
TrialRecord RunTrial(std::size_t n, std::size_t index, std::uint64_t seed,
                     const ProtocolParams& params, const OmegaSpec& omega,
                     bool record_timing = false, IntTrace* trace = nullptr);
TrialRun RunTrialDetailed(std::size_t n, std::size_t index, std::uint64_t seed,
                          const ProtocolParams& params, const OmegaSpec& omega,
                          bool record_timing = false);

// One sweep point: G(n, p) with p = (ln n + c) / n from the same stream as
// the trial of this seed; constructs only when connected.
TrialRecord RunSweepTrial(std::size_t n, double c, std::size_t index,
                          std::uint64_t seed, const ProtocolParams& params,
                          const OmegaSpec& omega, bool record_timing = false,
                          IntTrace* trace = nullptr);
TrialRun RunSweepTrialDetailed(std::size_t n, double c, std::size_t index,
                               std::uint64_t seed, const ProtocolParams& params,
                               const OmegaSpec& omega,
                               bool record_timing = false);

// All trials of the config (a sweep when c_values is nonempty), run on
// `jobs` workers and returned in trial order: by n, then c, then index.
// Writes the record file and trace files when configured.
std::vector<TrialRecord> RunExperiment(const ExperimentConfig& config);
std::vector<TrialRecord> SweepThreshold(const ExperimentConfig& config);

struct SummaryRow {
  std::string kind;
  std::size_t n = 0;
  std::optional<double> c;
  std::string mode;
  std::size_t trials = 0;
  std::size_t attempted = 0;
  std::size_t successes = 0;
  std::size_t connected = 0;
  double success_rate = 0.0;  // successes / trials
  double connected_rate = 0.0;
  double mean_components = 0.0;
  double m_ratio_mean = 0.0;  // M / ((n/2) ln n)
  double m_ratio_q10 = 0.0;
  double m_ratio_q50 = 0.0;
  double m_ratio_q90 = 0.0;
  double m_window_rate = 0.0;  // share with M ratio in 1 -+ 6 / ln n
  double degree_lemma_rate = 0.0;
  std::map<std::string, std::size_t> failures;  // histogram by reason class
};

struct SpotCheck {
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::vector<std::string> problems;
};

struct Summary {
  std::vector<SummaryRow> rows;
  SpotCheck spot_check;
  // Sweep tables: success rate non-decreasing in c up to slack 0.05.
  bool sweep_monotone = true;
};

// Text before the first ':' of a failure reason, with digits folded, so that
// reasons naming different vertices share a class.
std::string FailureClass(const std::string& reason);

// No rate lies more than `slack` below any earlier rate.
bool NonDecreasingWithSlack(const std::vector<double>& rates, double slack);

// Per-(kind, n, c, mode) rates and statistics. Every tenth success record
// (by position) is re-run from its seed; the regenerated trace must match the
// stored digest and replay to a single vertex holding all weight, and a
// stored trace file must replay the same way. Throws std::invalid_argument on
// empty input.
Summary Summarize(const std::vector<TrialRecord>& records,
                  bool spot_check = true);
void WriteSummaryCsv(const Summary& summary, std::ostream& out);
void WriteSummaryText(const Summary& summary, std::ostream& out);

}  // namespace acq

#endif  // ACQ_EXPERIMENT_H_
