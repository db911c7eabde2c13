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

#include "acq/experiment.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "json.hpp"

namespace acq {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

std::string ShortestDouble(double x) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, x);
  return std::string(buffer, result.ptr);
}

// Sub-seeds of one trial.
constexpr std::uint64_t kStreamSalt = 1;
constexpr std::uint64_t kBinomialSalt = 2;

void FillBaseStats(const Graph& base, std::size_t n, TrialRecord& r) {
  const DegreeStats stats = ComputeDegreeStats(base);
  r.base_components = ConnectedComponents(base).size();
  r.isolated = stats.count(0);
  r.max_degree = stats.max_degree;
  r.low_degree_counts = {stats.count(0), stats.count(1), stats.count(2)};
  r.degree_lemmas_ok = CheckDegreeLemmas(stats, n).all_ok();
}

void FillConstruction(const ConstructionResult& result, TrialRecord& r) {
  r.attempted = true;
  r.success = result.success;
  r.retries_used = result.retries_used;
  r.root = result.root;
  r.residual_size = result.success ? result.residual_size : 0;
  r.root_weight = result.success ? result.root_weight : 0;
  r.phase_reached = result.diagnostics.phase_reached;
  r.failure_reason = result.diagnostics.failure_reason;
  r.trace_length = result.trace.size();
  r.trace_digest = result.success ? TraceDigest(result.trace) : "";
  r.diagnostics = Json::parse(DiagnosticsToJson(result.diagnostics)).dump();
}

TrialRecord NewRecord(std::string kind, std::size_t n, std::size_t index,
                      std::uint64_t seed, const ProtocolParams& params,
                      const OmegaSpec& omega) {
  TrialRecord r;
  r.kind = std::move(kind);
  r.n = n;
  r.index = index;
  r.seed = seed;
  r.mode = std::string(ProtocolModeName(params.mode));
  r.omega = omega.ToString();
  r.p_minus = PMinus(n, omega.Evaluate(n));
  return r;
}

TrialRun TrialOutcome(std::size_t n, std::size_t index, std::uint64_t seed,
                      const ProtocolParams& params, const OmegaSpec& omega,
                      bool record_timing) {
  if (n < 2) throw ConfigError("trials need n >= 2");
  const auto start = Clock::now();
  TrialRun out;
  TrialRecord& r = out.record;
  r = NewRecord("trial", n, index, seed, params, omega);
  EdgeStream stream(n, DeriveSeed(seed, kStreamSalt));
  r.k = GnpPrefixLength(stream, r.p_minus, DeriveSeed(seed, kBinomialSalt));
  r.m = HittingTimeConnectivity(stream);
  out.graph = stream.PrefixGraph(r.m);
  r.m_verified = IsConnected(out.graph) &&
                 (r.m == 0 || !IsConnected(stream.PrefixGraph(r.m - 1)));
  FillBaseStats(stream.PrefixGraph(std::min(r.k, r.m)), n, r);
  r.components = 1;
  r.connected = true;
  r.residual_lower_bound = 1;
  out.construction = Construct(out.graph, stream, r.k, r.m, params);
  FillConstruction(out.construction, r);
  if (record_timing) {
    r.wall_seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
  }
  return out;
}

TrialRun SweepOutcome(std::size_t n, double c, std::size_t index,
                      std::uint64_t seed, const ProtocolParams& params,
                      const OmegaSpec& omega, bool record_timing) {
  if (n < 2) throw ConfigError("trials need n >= 2");
  const auto start = Clock::now();
  TrialRun out;
  TrialRecord& r = out.record;
  r = NewRecord("sweep", n, index, seed, params, omega);
  r.c = c;
  r.p = ThresholdProbability(n, c);
  EdgeStream stream(n, DeriveSeed(seed, kStreamSalt));
  // One binomial seed for every p couples the lengths monotonically in p.
  const std::uint64_t binomial_seed = DeriveSeed(seed, kBinomialSalt);
  r.k = GnpPrefixLength(stream, r.p_minus, binomial_seed);
  r.m = GnpPrefixLength(stream, *r.p, binomial_seed);
  out.graph = stream.PrefixGraph(r.m);
  FillBaseStats(stream.PrefixGraph(std::min(r.k, r.m)), n, r);
  r.components = ConnectedComponents(out.graph).size();
  r.connected = r.components == 1;
  r.residual_lower_bound = r.components;
  if (r.connected) {
    out.construction = Construct(out.graph, stream, r.k, r.m, params);
    FillConstruction(out.construction, r);
  } else {
    r.phase_reached = "skipped";
    r.failure_reason = "graph is disconnected";
  }
  if (record_timing) {
    r.wall_seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
  }
  return out;
}

template <typename T>
void PutOptional(Json& j, const char* key, const std::optional<T>& value) {
  if (value) {
    j[key] = *value;
  } else {
    j[key] = nullptr;
  }
}

template <typename T>
std::optional<T> GetOptional(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

struct Job {
  std::size_t n;
  std::optional<double> c;
  std::size_t index;
};

std::string TraceFileName(const Job& job) {
  std::string name = "n" + std::to_string(job.n);
  if (job.c) name += "_c" + ShortestDouble(*job.c);
  return name + "_i" + std::to_string(job.index) + ".trace";
}

double MRatio(const TrialRecord& r) {
  const double nn = static_cast<double>(r.n);
  return static_cast<double>(r.m) / (nn / 2.0 * std::log(nn));
}

// Nearest-rank quantile of sorted values.
double Quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const auto rank = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(sorted.size())));
  return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

std::string CsvQuote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string FailureList(const std::map<std::string, std::size_t>& failures) {
  std::string out;
  for (const auto& [reason, count] : failures) {
    if (!out.empty()) out += "; ";
    out += reason + "=" + std::to_string(count);
  }
  return out;
}

std::string SpotCheckRecord(const TrialRecord& r) {
  const ProtocolParams params =
      ProtocolParams::ForMode(ParseProtocolMode(r.mode), r.n);
  const OmegaSpec omega = OmegaSpec::Parse(r.omega);
  const TrialRun redo =
      r.kind == "sweep"
          ? SweepOutcome(r.n, r.c.value_or(0.0), r.index, r.seed, params, omega,
                         false)
          : TrialOutcome(r.n, r.index, r.seed, params, omega, false);
  const std::string label = r.kind + " n=" + std::to_string(r.n) +
                            " index=" + std::to_string(r.index);
  if (!redo.record.success) return label + ": rerun did not succeed";
  if (redo.record.trace_digest != r.trace_digest) {
    return label + ": rerun trace digest differs from the record";
  }
  const auto n = static_cast<std::int64_t>(r.n);
  auto gathers = [&](const IntTrace& trace) {
    try {
      const IntConfig end =
          Replay<std::int64_t>(redo.graph, IntConfig::AllOnes(r.n), trace);
      const auto support = ResidualSupport(end);
      return support.size() == 1 && end[support[0]] == n;
    } catch (const ReplayError&) {
      return false;
    }
  };
  if (!gathers(redo.construction.trace))
    return label + ": trace does not gather";
  if (!r.trace_file.empty()) {
    std::ifstream in(r.trace_file);
    if (!in) return label + ": cannot open " + r.trace_file;
    const auto loaded = ToIntTrace(ReadTrace(in));
    if (!loaded || TraceDigest(*loaded) != r.trace_digest ||
        !gathers(*loaded)) {
      return label + ": stored trace " + r.trace_file + " does not verify";
    }
  }
  return "";
}

}  // namespace

void ExperimentConfig::Validate() const {
  if (n_values.empty()) throw ConfigError("no n values given");
  for (std::size_t n : n_values) {
    if (n < 2) throw ConfigError("every n must be at least 2");
  }
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (jobs < 1) throw ConfigError("jobs must be at least 1");
  for (double c : c_values) {
    if (!std::isfinite(c)) throw ConfigError("c values must be finite");
  }
  if (omega.kind == OmegaSpec::Kind::kConstant && !std::isfinite(omega.value)) {
    throw ConfigError("omega must be finite");
  }
}

std::string RecordToJson(const TrialRecord& r) {
  Json j;
  j["kind"] = r.kind;
  j["n"] = r.n;
  j["index"] = r.index;
  j["seed"] = r.seed;
  j["mode"] = r.mode;
  j["omega"] = r.omega;
  PutOptional(j, "c", r.c);
  PutOptional(j, "p", r.p);
  j["p_minus"] = r.p_minus;
  j["K"] = r.k;
  j["M"] = r.m;
  j["M_verified"] = r.m_verified;
  j["base_components"] = r.base_components;
  j["isolated"] = r.isolated;
  j["components"] = r.components;
  j["connected"] = r.connected;
  j["max_degree"] = r.max_degree;
  j["low_degree_counts"] = r.low_degree_counts;
  j["degree_lemmas_ok"] = r.degree_lemmas_ok;
  j["attempted"] = r.attempted;
  j["success"] = r.success;
  j["retries_used"] = r.retries_used;
  j["root"] = r.root;
  j["residual_size"] = r.residual_size;
  j["root_weight"] = r.root_weight;
  j["residual_lower_bound"] = r.residual_lower_bound;
  j["phase_reached"] = r.phase_reached;
  PutOptional(j, "failure_reason", r.failure_reason);
  j["trace_length"] = r.trace_length;
  j["trace_digest"] = r.trace_digest;
  j["trace_file"] = r.trace_file;
  j["diagnostics"] =
      r.diagnostics.empty() ? Json(nullptr) : Json::parse(r.diagnostics);
  if (r.wall_seconds) j["wall_seconds"] = *r.wall_seconds;
  return j.dump();
}

TrialRecord RecordFromJson(const std::string& line) {
  const Json j = Json::parse(line);
  TrialRecord r;
  r.kind = j.at("kind").get<std::string>();
  r.n = j.at("n").get<std::size_t>();
  r.index = j.at("index").get<std::size_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.mode = j.at("mode").get<std::string>();
  r.omega = j.at("omega").get<std::string>();
  r.c = GetOptional<double>(j, "c");
  r.p = GetOptional<double>(j, "p");
  r.p_minus = j.at("p_minus").get<double>();
  r.k = j.at("K").get<std::uint64_t>();
  r.m = j.at("M").get<std::uint64_t>();
  r.m_verified = j.at("M_verified").get<bool>();
  r.base_components = j.at("base_components").get<std::size_t>();
  r.isolated = j.at("isolated").get<std::size_t>();
  r.components = j.at("components").get<std::size_t>();
  r.connected = j.at("connected").get<bool>();
  r.max_degree = j.at("max_degree").get<std::size_t>();
  r.low_degree_counts =
      j.at("low_degree_counts").get<std::vector<std::size_t>>();
  r.degree_lemmas_ok = j.at("degree_lemmas_ok").get<bool>();
  r.attempted = j.at("attempted").get<bool>();
  r.success = j.at("success").get<bool>();
  r.retries_used = j.at("retries_used").get<std::size_t>();
  r.root = j.at("root").get<Vertex>();
  r.residual_size = j.at("residual_size").get<std::size_t>();
  r.root_weight = j.at("root_weight").get<std::int64_t>();
  r.residual_lower_bound = j.at("residual_lower_bound").get<std::size_t>();
  r.phase_reached = j.at("phase_reached").get<std::string>();
  r.failure_reason = GetOptional<std::string>(j, "failure_reason");
  r.trace_length = j.at("trace_length").get<std::size_t>();
  r.trace_digest = j.at("trace_digest").get<std::string>();
  r.trace_file = j.at("trace_file").get<std::string>();
  if (!j.at("diagnostics").is_null())
    r.diagnostics = j.at("diagnostics").dump();
  r.wall_seconds = GetOptional<double>(j, "wall_seconds");
  return r;
}

std::vector<TrialRecord> ReadRecords(std::istream& in) {
  std::vector<TrialRecord> records;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      records.push_back(RecordFromJson(line));
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("record line " + std::to_string(number) +
                                  ": " + e.what());
    }
  }
  return records;
}

void WriteRecords(const std::vector<TrialRecord>& records, std::ostream& out) {
  for (const TrialRecord& r : records) out << RecordToJson(r) << '\n';
}

std::uint64_t TrialSeed(std::uint64_t master, std::size_t n,
                        std::size_t index) {
  return DeriveSeed(DeriveSeed(master, n), index);
}

std::string TraceDigest(const IntTrace& trace) {
  std::ostringstream text;
  WriteTraceText(trace, text);
  std::uint64_t hash = 0xcbf29ce484222325ULL;  // 64-bit FNV-1a
  for (unsigned char ch : text.str()) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << hash;
  return hex.str();
}

TrialRecord RunTrial(std::size_t n, std::size_t index, std::uint64_t seed,
                     const ProtocolParams& params, const OmegaSpec& omega,
                     bool record_timing, IntTrace* trace) {
  TrialRun out = TrialOutcome(n, index, seed, params, omega, record_timing);
  if (trace != nullptr) *trace = std::move(out.construction.trace);
  return out.record;
}

TrialRun RunTrialDetailed(std::size_t n, std::size_t index, std::uint64_t seed,
                          const ProtocolParams& params, const OmegaSpec& omega,
                          bool record_timing) {
  return TrialOutcome(n, index, seed, params, omega, record_timing);
}

TrialRecord RunSweepTrial(std::size_t n, double c, std::size_t index,
                          std::uint64_t seed, const ProtocolParams& params,
                          const OmegaSpec& omega, bool record_timing,
                          IntTrace* trace) {
  TrialRun out = SweepOutcome(n, c, index, seed, params, omega, record_timing);
  if (trace != nullptr) *trace = std::move(out.construction.trace);
  return out.record;
}

TrialRun RunSweepTrialDetailed(std::size_t n, double c, std::size_t index,
                               std::uint64_t seed, const ProtocolParams& params,
                               const OmegaSpec& omega, bool record_timing) {
  return SweepOutcome(n, c, index, seed, params, omega, record_timing);
}

std::vector<TrialRecord> RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  std::vector<Job> jobs;
  for (std::size_t n : config.n_values) {
    if (config.c_values.empty()) {
      for (std::size_t i = 0; i < config.trials; ++i)
        jobs.push_back({n, {}, i});
    } else {
      for (double c : config.c_values) {
        for (std::size_t i = 0; i < config.trials; ++i) {
          jobs.push_back({n, c, i});
        }
      }
    }
  }
  std::ofstream out;
  if (!config.out.empty()) {
    const auto dir = std::filesystem::path(config.out).parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir);
    out.open(config.out, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + config.out);
  }
  if (!config.trace_dir.empty()) {
    std::filesystem::create_directories(config.trace_dir);
  }

  std::vector<std::optional<TrialRecord>> results(jobs.size());
  std::mutex mutex;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      const Job& job = jobs[i];
      TrialRecord record;
      try {
        const ProtocolParams params =
            ProtocolParams::ForMode(config.mode, job.n);
        const std::uint64_t seed = TrialSeed(config.seed, job.n, job.index);
        IntTrace trace;
        record = job.c
                     ? RunSweepTrial(job.n, *job.c, job.index, seed, params,
                                     config.omega, config.record_timing, &trace)
                     : RunTrial(job.n, job.index, seed, params, config.omega,
                                config.record_timing, &trace);
        if (!config.trace_dir.empty() && record.success) {
          const auto path =
              std::filesystem::path(config.trace_dir) / TraceFileName(job);
          std::ofstream file(path, std::ios::binary | std::ios::trunc);
          WriteTraceText(trace, file);
          record.trace_file = path.string();
        }
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!error) error = std::current_exception();
        next = jobs.size();
        ready.notify_all();
        return;
      }
      std::lock_guard lock(mutex);
      results[i] = std::move(record);
      ready.notify_all();
    }
  };
  const std::size_t workers = std::min(config.jobs, jobs.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);

  // Single collector: records reach the file strictly in trial order.
  std::vector<TrialRecord> records;
  records.reserve(jobs.size());
  {
    std::unique_lock lock(mutex);
    while (records.size() < jobs.size()) {
      ready.wait(lock, [&] { return error || results[records.size()]; });
      if (error) break;
      while (records.size() < jobs.size() && results[records.size()]) {
        records.push_back(std::move(*results[records.size()]));
        if (out.is_open()) out << RecordToJson(records.back()) << '\n';
      }
    }
  }
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  if (out.is_open()) {
    out.flush();
    if (!out) throw ConfigError("failed writing " + config.out);
  }
  return records;
}

std::vector<TrialRecord> SweepThreshold(const ExperimentConfig& config) {
  if (config.c_values.empty()) throw ConfigError("sweep needs c values");
  return RunExperiment(config);
}

std::string FailureClass(const std::string& reason) {
  std::string head = reason.substr(0, reason.find(':'));
  std::string out;
  for (char ch : head) {
    const bool digit = ch >= '0' && ch <= '9';
    if (!digit) {
      out += ch;
    } else if (out.empty() || out.back() != '#') {
      out += '#';
    }
  }
  return out;
}

bool NonDecreasingWithSlack(const std::vector<double>& rates, double slack) {
  double best = -1.0;
  for (double r : rates) {
    if (r < best - slack) return false;
    best = std::max(best, r);
  }
  return true;
}

Summary Summarize(const std::vector<TrialRecord>& records, bool spot_check) {
  if (records.empty()) throw std::invalid_argument("no records to summarize");
  using Key = std::tuple<std::string, std::size_t, bool, double, std::string>;
  std::map<Key, std::vector<const TrialRecord*>> groups;
  for (const TrialRecord& r : records) {
    groups[Key(r.kind, r.n, r.c.has_value(), r.c.value_or(0.0), r.mode)]
        .push_back(&r);
  }
  Summary summary;
  for (const auto& [key, members] : groups) {
    SummaryRow row;
    row.kind = std::get<0>(key);
    row.n = std::get<1>(key);
    if (std::get<2>(key)) row.c = std::get<3>(key);
    row.mode = std::get<4>(key);
    row.trials = members.size();
    std::vector<double> ratios;
    std::size_t in_window = 0;
    std::size_t lemmas = 0;
    double components = 0.0;
    const double ln = std::log(static_cast<double>(row.n));
    for (const TrialRecord* r : members) {
      row.attempted += r->attempted;
      row.successes += r->success;
      row.connected += r->connected;
      lemmas += r->degree_lemmas_ok;
      components += static_cast<double>(r->components);
      const double ratio = MRatio(*r);
      ratios.push_back(ratio);
      in_window += std::abs(ratio - 1.0) <= 6.0 / ln;
      if (!r->success && r->failure_reason) {
        ++row.failures[FailureClass(*r->failure_reason)];
      }
    }
    const auto count = static_cast<double>(row.trials);
    row.success_rate = static_cast<double>(row.successes) / count;
    row.connected_rate = static_cast<double>(row.connected) / count;
    row.mean_components = components / count;
    row.degree_lemma_rate = static_cast<double>(lemmas) / count;
    if (row.kind == "trial") {
      std::sort(ratios.begin(), ratios.end());
      double sum = 0.0;
      for (double x : ratios) sum += x;
      row.m_ratio_mean = sum / count;
      row.m_ratio_q10 = Quantile(ratios, 0.1);
      row.m_ratio_q50 = Quantile(ratios, 0.5);
      row.m_ratio_q90 = Quantile(ratios, 0.9);
      row.m_window_rate = static_cast<double>(in_window) / count;
    }
    summary.rows.push_back(std::move(row));
  }

  // Rows are ordered by c within each (kind, n) apart from the mode key, so
  // gather the sweep tables explicitly.
  std::map<std::tuple<std::size_t, std::string>, std::vector<double>> sweeps;
  for (const SummaryRow& row : summary.rows) {
    if (row.kind == "sweep" && row.c) {
      sweeps[{row.n, row.mode}].push_back(row.success_rate);
    }
  }
  for (const auto& [key, rates] : sweeps) {
    summary.sweep_monotone =
        summary.sweep_monotone && NonDecreasingWithSlack(rates, 0.05);
  }

  if (spot_check) {
    std::size_t position = 0;
    for (const TrialRecord& r : records) {
      if (!r.success) continue;
      if (position++ % 10 != 0) continue;
      ++summary.spot_check.checked;
      std::string problem;
      try {
        problem = SpotCheckRecord(r);
      } catch (const std::exception& e) {
        problem = r.kind + " n=" + std::to_string(r.n) +
                  " index=" + std::to_string(r.index) + ": " + e.what();
      }
      if (problem.empty()) {
        ++summary.spot_check.passed;
      } else {
        summary.spot_check.problems.push_back(problem);
      }
    }
  }
  return summary;
}

void WriteSummaryCsv(const Summary& summary, std::ostream& out) {
  out << "kind,n,c,mode,trials,attempted,successes,success_rate,"
         "connected_rate,mean_components,m_ratio_mean,m_ratio_q10,"
         "m_ratio_q50,m_ratio_q90,m_window_rate,degree_lemma_rate,failures\n";
  for (const SummaryRow& row : summary.rows) {
    out << row.kind << ',' << row.n << ','
        << (row.c ? ShortestDouble(*row.c) : "") << ',' << row.mode << ','
        << row.trials << ',' << row.attempted << ',' << row.successes << ','
        << ShortestDouble(row.success_rate) << ','
        << ShortestDouble(row.connected_rate) << ','
        << ShortestDouble(row.mean_components) << ','
        << ShortestDouble(row.m_ratio_mean) << ','
        << ShortestDouble(row.m_ratio_q10) << ','
        << ShortestDouble(row.m_ratio_q50) << ','
        << ShortestDouble(row.m_ratio_q90) << ','
        << ShortestDouble(row.m_window_rate) << ','
        << ShortestDouble(row.degree_lemma_rate) << ','
        << CsvQuote(FailureList(row.failures)) << '\n';
  }
}

void WriteSummaryText(const Summary& summary, std::ostream& out) {
  out << std::fixed << std::setprecision(3);
  for (const SummaryRow& row : summary.rows) {
    out << row.kind << " n=" << row.n;
    if (row.c) out << " c=" << ShortestDouble(*row.c);
    out << " mode=" << row.mode << ": " << row.successes << "/" << row.trials
        << " succeeded (rate " << row.success_rate << "), connected "
        << row.connected_rate << ", mean components " << row.mean_components;
    if (row.kind == "trial") {
      out << ", M/((n/2)ln n) mean " << row.m_ratio_mean << " [q10 "
          << row.m_ratio_q10 << ", q50 " << row.m_ratio_q50 << ", q90 "
          << row.m_ratio_q90 << "], in window " << row.m_window_rate;
    }
    out << ", degree checks " << row.degree_lemma_rate << '\n';
    for (const auto& [reason, count] : row.failures) {
      out << "  " << count << " x " << reason << '\n';
    }
  }
  out << "sweep monotone (slack 0.05): "
      << (summary.sweep_monotone ? "yes" : "no") << '\n';
  out << "spot check: " << summary.spot_check.passed << "/"
      << summary.spot_check.checked << " re-verified\n";
  for (const std::string& p : summary.spot_check.problems) {
    out << "  " << p << '\n';
  }
}

}  // namespace acq
