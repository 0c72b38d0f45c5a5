// Copyright 2026 The Expodesign Authors.
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

#include "cli.h"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"
#include "expodesign/balanced_partition.h"
#include "expodesign/clustering.h"
#include "expodesign/design.h"
#include "expodesign/edge_list.h"
#include "expodesign/graph.h"
#include "expodesign/graph_snapshot.h"
#include "expodesign/local_search.h"
#include "expodesign/objective.h"
#include "expodesign/parallel.h"
#include "expodesign/scenario.h"
#include "expodesign/simulation.h"
#include "expodesign/sweep.h"
#include "expodesign/synthetic.h"
#include "json.hpp"
#include "manifest.h"

namespace expodesign::cli {
namespace {

using Json = nlohmann::ordered_json;

struct IngestFlags {
  std::string input;
  std::string out;
  size_t min_degree = 0;
  bool normalize = false;
  size_t outcome_groups = 0;
  uint64_t group_seed = 0;
};

struct ExportFlags {
  std::string graph;
  std::string out;
};

struct DesignFlags {
  std::string graph;
  std::string method;
  std::string out;
  double phi = 1.0;
  size_t k_max = 0;
  double p = 0.5;
  uint64_t seed = 0;
  size_t restarts = 1;
  size_t passes = 0;
  double time_budget = 0.0;
  std::string trace;
  std::vector<size_t> replay_pass_limits;
};

struct MomentsFlags {
  std::string graph;
  std::string clustering;
  bool bernoulli = false;
  double p = 0.5;
  std::string out;
};

struct ScenarioFlags {
  std::string file;
  std::string kind;
  uint64_t model_seed = 0;
};

struct SimulateFlags {
  std::string graph;
  std::string clustering;
  bool bernoulli = false;
  ScenarioFlags scenario;
  size_t replicates = kDefaultReplicates;
  uint64_t seed = 0;
  double p = 0.5;
  size_t bins = 50;
  std::string out_dir;
};

struct SweepFlags {
  std::string graph;
  ScenarioFlags scenario;
  std::string phis;
  size_t k_max = 0;
  double p = 0.5;
  uint64_t seed = 0;
  std::optional<uint64_t> sim_seed;
  size_t restarts = 1;
  size_t passes = 0;
  size_t replicates = kDefaultReplicates;
  std::string out;
};

struct SynthFlags {
  std::string kind = "planted";
  size_t n_outcome = 200;
  size_t n_diversion = 2000;
  size_t blocks = 10;
  size_t degree = 10;
  double cross_block = 0.0;
  size_t nnz = 0;
  uint64_t seed = 0;
  std::string out;
};

struct ReplayFlags {
  std::string manifest;
};

// Carries the exit code alongside the message so that degenerate designs
// and usage mistakes map to distinct codes.
struct Failure {
  int code;
  std::string message;
};

int CodeFor(const absl::Status& status) {
  return status.code() == absl::StatusCode::kFailedPrecondition
             ? kExitDegenerateDesign
             : kExitError;
}

std::string ManifestPath(const std::string& override_path,
                         const std::string& primary_output) {
  return override_path.empty() ? primary_output + ".manifest.json"
                               : override_path;
}

absl::Status WriteText(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  out << content;
  out.close();
  if (!out) return absl::DataLossError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

absl::StatusOr<BipartiteGraph> LoadGraph(const std::string& path,
                                         ManifestBuilder& manifest) {
  if (absl::Status s = manifest.AddInput(path); !s.ok()) return s;
  return LoadGraphSnapshot(path);
}

// Either a clustering file or the Bernoulli (all-singleton) design.
absl::StatusOr<DesignSpec> LoadDesign(const BipartiteGraph& g,
                                      const std::string& clustering,
                                      bool bernoulli, double p,
                                      ManifestBuilder& manifest) {
  if (bernoulli) return DesignSpec::Bernoulli(g.n_diversion(), p);
  if (absl::Status s = manifest.AddInput(clustering); !s.ok()) return s;
  absl::StatusOr<Clustering> c = LoadClustering(clustering, g);
  if (!c.ok()) return c.status();
  return DesignSpec::IndependentCluster(*std::move(c), p);
}

absl::StatusOr<ScenarioSpec> ResolveScenario(const ScenarioFlags& flags,
                                             ManifestBuilder& manifest) {
  if (!flags.file.empty()) {
    if (absl::Status s = manifest.AddInput(flags.file); !s.ok()) return s;
    return LoadScenario(flags.file);
  }
  absl::StatusOr<ScenarioKind> kind = ParseScenarioKind(flags.kind);
  if (!kind.ok()) return kind.status();
  ScenarioSpec spec = ScenarioSpec::Defaults(*kind);
  spec.model_seed = flags.model_seed;
  return spec;
}

std::optional<Failure> RunIngest(const IngestFlags& f,
                                 const std::vector<std::string>& args,
                                 const std::string& manifest_override,
                                 std::ostream& out) {
  ManifestBuilder manifest("ingest", args);
  if (absl::Status s = manifest.AddInput(f.input); !s.ok()) {
    return Failure{kExitError, s.ToString()};
  }
  absl::StatusOr<BipartiteGraph> g = LoadEdgeList(f.input);
  if (!g.ok()) return Failure{CodeFor(g.status()), g.status().ToString()};
  const size_t read_outcome = g->n_outcome();
  const size_t read_diversion = g->n_diversion();
  if (f.min_degree > 0) {
    g = FilterMinOutcomeDegree(*g, f.min_degree);
    if (!g.ok()) return Failure{CodeFor(g.status()), g.status().ToString()};
  }
  if (f.outcome_groups > 0) {
    manifest.AddSeed("group_seed", f.group_seed);
    g = GroupOutcomeUnits(*g, f.outcome_groups, f.group_seed);
    if (!g.ok()) return Failure{CodeFor(g.status()), g.status().ToString()};
  }
  if (f.normalize) {
    g = NormalizeRows(*g);
    if (!g.ok()) return Failure{CodeFor(g.status()), g.status().ToString()};
  }
  const std::string outcome_map = f.out + ".outcome_ids.tsv";
  const std::string diversion_map = f.out + ".diversion_ids.tsv";
  for (absl::Status s : {SaveGraphSnapshot(*g, f.out),
                         SaveIdMap(g->outcome_ids(), outcome_map),
                         SaveIdMap(g->diversion_ids(), diversion_map)}) {
    if (!s.ok()) return Failure{kExitError, s.ToString()};
  }
  manifest.AddOutput(f.out);
  manifest.AddOutput(outcome_map);
  manifest.AddOutput(diversion_map);
  if (absl::Status s = manifest.Write(ManifestPath(manifest_override, f.out));
      !s.ok()) {
    return Failure{kExitError, s.ToString()};
  }
  out << absl::StrFormat(
      "ingest: read %d outcome / %d diversion units; kept %d / %d units, %d "
      "edges%s\n",
      read_outcome, read_diversion, g->n_outcome(), g->n_diversion(),
      g->num_edges(), g->IsRowStochastic() ? " (row-stochastic)" : "");
  return std::nullopt;
}

std::optional<Failure> RunExport(const ExportFlags& f,
                                 const std::vector<std::string>& args,
                                 const std::string& manifest_override,
                                 std::ostream& out) {
  ManifestBuilder manifest("export", args);
  absl::StatusOr<BipartiteGraph> g = LoadGraph(f.graph, manifest);
  if (!g.ok()) return Failure{kExitError, g.status().ToString()};
  if (absl::Status s = SaveEdgeList(*g, f.out); !s.ok()) {
    return Failure{kExitError, s.ToString()};
  }
  manifest.AddOutput(f.out);
  if (absl::Status s = manifest.Write(ManifestPath(manifest_override, f.out));
      !s.ok()) {
    return Failure{kExitError, s.ToString()};
  }
  out << absl::StrFormat("export: %d edges\n", g->num_edges());
  return std::nullopt;
}

std::string TraceCsv(const std::vector<PassTrace>& trace) {
  std::string csv =
      "pass,moves_accepted,objective_total,variance_sum,covariance_sum,elapsed\n";
  for (const PassTrace& t : trace) {
    absl::StrAppend(&csv, absl::StrFormat("%d,%d,%.17g,%.17g,%.17g,%.6f\n",
                                          t.pass, t.moves_accepted,
                                          t.objective.total,
                                          t.objective.variance_sum,
                                          t.objective.covariance_sum,
                                          t.elapsed_seconds));
  }
  return csv;
}

std::optional<Failure> RunDesign(const DesignFlags& f,
                                 const std::vector<std::string>& args,
                                 const std::string& manifest_override,
                                 std::ostream& out) {
  ManifestBuilder manifest("design", args);
  absl::StatusOr<BipartiteGraph> g = LoadGraph(f.graph, manifest);
  if (!g.ok()) return Failure{kExitError, g.status().ToString()};

  std::optional<Clustering> clustering;
  std::vector<PassTrace> trace;
  if (f.method == "singleton") {
    clustering = Clustering::Singletons(g->n_diversion());
  } else if (f.method == "one-cluster") {
    clustering = Clustering::OneCluster(g->n_diversion());
  } else if (f.method.starts_with("balanced:")) {
    size_t k = 0;
    const std::string count = f.method.substr(9);
    if (count.empty() ||
        count.find_first_not_of("0123456789") != std::string::npos) {
      return Failure{kExitUsage, "balanced method needs a count: balanced:<k>"};
    }
    k = std::stoull(count);
    manifest.AddSeed("seed", f.seed);
    absl::StatusOr<Clustering> c = BalancedPartition(*g, k, f.seed);
    if (!c.ok()) return Failure{kExitError, c.status().ToString()};
    clustering = *std::move(c);
  } else if (f.method == "exposure-design") {
    LocalSearchConfig config;
    config.phi = f.phi;
    config.p = f.p;
    config.k_max = f.k_max == 0 ? kUnlimitedClusterSize : f.k_max;
    config.max_passes = f.passes;
    config.time_budget_seconds = f.time_budget;
    config.seed = f.seed;
    manifest.AddSeed("seed", f.seed);
    absl::StatusOr<LocalSearchResult> result = LocalSearchWithRestarts(
        *g, config, f.restarts, DefaultThreadCount(), f.replay_pass_limits);
    if (!result.ok()) {
      return Failure{CodeFor(result.status()), result.status().ToString()};
    }
    if (f.time_budget > 0.0 && f.replay_pass_limits.empty()) {
      // A time-limited run is repeated exactly from its pass counts.
      Json extra = Json::array();
      extra.push_back("--replay-pass-limits");
      extra.push_back(absl::StrJoin(result->passes_by_restart, ","));
      manifest.Set("replay_extra_args", std::move(extra));
    }
    manifest.Set("passes_by_restart", result->passes_by_restart);
    trace = std::move(result->trace);
    clustering = std::move(result->clustering);
  } else {
    return Failure{kExitUsage,
                   absl::StrCat("unknown method '", f.method,
                                "'; expected singleton, one-cluster, "
                                "balanced:<k> or exposure-design")};
  }

  if (absl::Status s = SaveClustering(*clustering, *g, f.out); !s.ok()) {
    return Failure{kExitError, s.ToString()};
  }
  manifest.AddOutput(f.out);
  if (!f.trace.empty()) {
    if (trace.empty()) {
      return Failure{kExitUsage, "--trace needs --method exposure-design"};
    }
    if (absl::Status s = WriteText(f.trace, TraceCsv(trace)); !s.ok()) {
      return Failure{kExitError, s.ToString()};
    }
    manifest.AddOutput(f.trace, /*timing=*/true);
  }
  absl::StatusOr<ObjectiveValue> objective =
      Objective(*g, *clustering, f.phi, f.p);
  if (!objective.ok()) return Failure{kExitError, objective.status().ToString()};
  if (absl::Status s = manifest.Write(ManifestPath(manifest_override, f.out));
      !s.ok()) {
    return Failure{kExitError, s.ToString()};
  }
  out << absl::StrFormat(
      "design: %s, %d clusters (largest %d), objective %.10g at phi=%g\n",
      f.method, clustering->num_clusters(), clustering->MaxClusterSize(),
      objective->total, f.phi);
  return std::nullopt;
}

std::optional<Failure> RunMoments(const MomentsFlags& f,
                                  const std::vector<std::string>& args,
                                  const std::string& manifest_override,
                                  std::ostream& out) {
  ManifestBuilder manifest("moments", args);
  absl::StatusOr<BipartiteGraph> g = LoadGraph(f.graph, manifest);
  if (!g.ok()) return Failure{kExitError, g.status().ToString()};
  absl::StatusOr<DesignSpec> design =
      LoadDesign(*g, f.clustering, f.bernoulli, f.p, manifest);
  if (!design.ok()) return Failure{kExitError, design.status().ToString()};
  absl::StatusOr<ExposureMoments> moments = ComputeExposureMoments(*g, *design);
  if (!moments.ok()) {
    return Failure{CodeFor(moments.status()), moments.status().ToString()};
  }
  std::ostringstream csv;
  WriteMomentsCsv(*moments, *g, csv);
  if (absl::Status s = WriteText(f.out, csv.str()); !s.ok()) {
    return Failure{kExitError, s.ToString()};
  }
  manifest.AddOutput(f.out);
  if (absl::Status s = manifest.Write(ManifestPath(manifest_override, f.out));
      !s.ok()) {
    return Failure{kExitError, s.ToString()};
  }
  out << absl::StrFormat("moments: %s, %d outcome units\n", design->Name(),
                         g->n_outcome());
  return std::nullopt;
}

std::optional<Failure> RunSimulate(const SimulateFlags& f,
                                   const std::vector<std::string>& args,
                                   const std::string& manifest_override,
                                   std::ostream& out) {
  ManifestBuilder manifest("simulate", args);
  absl::StatusOr<BipartiteGraph> g = LoadGraph(f.graph, manifest);
  if (!g.ok()) return Failure{kExitError, g.status().ToString()};
  absl::StatusOr<DesignSpec> design =
      LoadDesign(*g, f.clustering, f.bernoulli, f.p, manifest);
  if (!design.ok()) return Failure{kExitError, design.status().ToString()};
  absl::StatusOr<ScenarioSpec> scenario = ResolveScenario(f.scenario, manifest);
  if (!scenario.ok()) return Failure{kExitError, scenario.status().ToString()};
  absl::StatusOr<OutcomeModel> model = GenerateOutcomeModel(*g, *scenario);
  if (!model.ok()) return Failure{kExitError, model.status().ToString()};
  manifest.AddSeed("seed", f.seed);
  manifest.AddSeed("model_seed", scenario->model_seed);

  SimulationConfig config;
  config.replicates = f.replicates;
  config.base_seed = f.seed;
  config.threads = DefaultThreadCount();
  config.scenario_name = scenario->Name();
  absl::StatusOr<SimulationReport> report =
      RunSimulation(*g, *design, *model, config);
  if (!report.ok()) {
    return Failure{CodeFor(report.status()), report.status().ToString()};
  }

  std::error_code ec;
  std::filesystem::create_directories(f.out_dir, ec);
  if (ec) return Failure{kExitError, absl::StrCat("cannot create ", f.out_dir)};
  const std::filesystem::path dir(f.out_dir);
  const std::string report_path = (dir / "report.json").string();
  const std::string estimates_path = (dir / "estimates.csv").string();
  const std::string histogram_path = (dir / "histogram.csv").string();
  std::ostringstream estimates;
  WriteEstimatesCsv(*report, estimates);
  for (absl::Status s : {WriteText(report_path, ReportJson(*report, config)),
                         WriteText(estimates_path, estimates.str()),
                         ExportHistogram(*report, f.bins, histogram_path)}) {
    if (!s.ok()) return Failure{kExitError, s.ToString()};
  }
  manifest.AddOutput(report_path);
  manifest.AddOutput(estimates_path);
  manifest.AddOutput(histogram_path);
  const std::string manifest_path = manifest_override.empty()
                                        ? (dir / "manifest.json").string()
                                        : manifest_override;
  if (absl::Status s = manifest.Write(manifest_path); !s.ok()) {
    return Failure{kExitError, s.ToString()};
  }
  out << absl::StrFormat(
      "simulate: %s / %s, %d replicates: true_ate %.6g, mean %.6g, bias "
      "%.3g, mse %.6g\n",
      report->design_name, report->scenario_name, f.replicates,
      report->true_ate, report->mean, report->bias, report->mse);
  return std::nullopt;
}

std::optional<Failure> RunSweep(const SweepFlags& f,
                                const std::vector<std::string>& args,
                                const std::string& manifest_override,
                                std::ostream& out) {
  std::vector<double> phis;
  for (absl::string_view token : absl::StrSplit(f.phis, ',')) {
    double phi = 0.0;
    if (!absl::SimpleAtod(absl::StripAsciiWhitespace(token), &phi)) {
      return Failure{kExitUsage,
                     absl::StrCat("--phis: cannot parse '", token, "'")};
    }
    phis.push_back(phi);
  }
  if (phis.empty()) return Failure{kExitUsage, "--phis needs at least one value"};
  ManifestBuilder manifest("sweep", args);
  absl::StatusOr<BipartiteGraph> g = LoadGraph(f.graph, manifest);
  if (!g.ok()) return Failure{kExitError, g.status().ToString()};
  absl::StatusOr<ScenarioSpec> scenario = ResolveScenario(f.scenario, manifest);
  if (!scenario.ok()) return Failure{kExitError, scenario.status().ToString()};
  absl::StatusOr<OutcomeModel> model = GenerateOutcomeModel(*g, *scenario);
  if (!model.ok()) return Failure{kExitError, model.status().ToString()};
  const uint64_t sim_seed = f.sim_seed.value_or(f.seed);
  manifest.AddSeed("seed", f.seed);
  manifest.AddSeed("sim_seed", sim_seed);
  manifest.AddSeed("model_seed", scenario->model_seed);

  LocalSearchConfig search;
  search.k_max = f.k_max == 0 ? kUnlimitedClusterSize : f.k_max;
  search.max_passes = f.passes;
  search.seed = f.seed;
  SimulationConfig sim;
  sim.replicates = f.replicates;
  sim.base_seed = sim_seed;
  sim.threads = DefaultThreadCount();
  sim.scenario_name = scenario->Name();
  absl::StatusOr<std::vector<SweepRow>> rows =
      PhiSweep(*g, *model, phis, search, f.restarts, f.p, sim);
  if (!rows.ok()) return Failure{CodeFor(rows.status()), rows.status().ToString()};
  std::ostringstream csv;
  WriteSweepCsv(*rows, csv);
  if (absl::Status s = WriteText(f.out, csv.str()); !s.ok()) {
    return Failure{kExitError, s.ToString()};
  }
  manifest.AddOutput(f.out);
  if (absl::Status s = manifest.Write(ManifestPath(manifest_override, f.out));
      !s.ok()) {
    return Failure{kExitError, s.ToString()};
  }
  for (const SweepRow& row : *rows) {
    out << absl::StrFormat("sweep: phi=%g clusters=%d mse=%.6g bias=%.3g\n",
                           row.phi, row.num_clusters, row.mse, row.bias);
  }
  return std::nullopt;
}

std::optional<Failure> RunSynth(const SynthFlags& f,
                                const std::vector<std::string>& args,
                                const std::string& manifest_override,
                                std::ostream& out) {
  ManifestBuilder manifest("synth", args);
  manifest.AddSeed("seed", f.seed);
  absl::StatusOr<BipartiteGraph> g;
  if (f.kind == "planted") {
    PlantedBlockConfig config;
    config.n_outcome = f.n_outcome;
    config.n_diversion = f.n_diversion;
    config.blocks = f.blocks;
    config.degree = f.degree;
    config.cross_block = f.cross_block;
    config.seed = f.seed;
    g = PlantedBlockGraph(config);
  } else if (f.kind == "random") {
    const size_t nnz = f.nnz == 0 ? 10 * f.n_outcome : f.nnz;
    g = RandomSparseGraph(f.n_outcome, f.n_diversion, nnz, f.seed);
  } else {
    return Failure{kExitUsage, absl::StrCat("unknown synth kind '", f.kind,
                                            "'; expected planted or random")};
  }
  if (!g.ok()) return Failure{kExitError, g.status().ToString()};
  if (absl::Status s = SaveEdgeList(*g, f.out); !s.ok()) {
    return Failure{kExitError, s.ToString()};
  }
  manifest.AddOutput(f.out);
  if (absl::Status s = manifest.Write(ManifestPath(manifest_override, f.out));
      !s.ok()) {
    return Failure{kExitError, s.ToString()};
  }
  out << absl::StrFormat("synth: %s graph, %d outcome / %d diversion units, %d "
                         "edges\n",
                         f.kind, g->n_outcome(), g->n_diversion(),
                         g->num_edges());
  return std::nullopt;
}

// Restores the working directory on scope exit.
class ScopedCwd {
 public:
  explicit ScopedCwd(const std::filesystem::path& dir)
      : previous_(std::filesystem::current_path()) {
    std::filesystem::current_path(dir);
  }
  ~ScopedCwd() {
    std::error_code ec;
    std::filesystem::current_path(previous_, ec);
  }

 private:
  std::filesystem::path previous_;
};

std::optional<Failure> RunReplay(const ReplayFlags& f, std::ostream& out,
                                 std::ostream& err) {
  std::ifstream in(f.manifest);
  if (!in) return Failure{kExitError, absl::StrCat("cannot open ", f.manifest)};
  Json manifest;
  try {
    manifest = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    return Failure{kExitError, absl::StrCat("bad manifest: ", e.what())};
  }
  if (!manifest.contains("args") || !manifest.contains("cwd") ||
      !manifest.contains("outputs") || !manifest.contains("inputs")) {
    return Failure{kExitError, "manifest lacks args, cwd, inputs or outputs"};
  }
  const std::string replay_manifest =
      std::filesystem::absolute(f.manifest).string() + ".replay.json";

  // Rebuild the original arguments without any manifest override.
  std::vector<std::string> args;
  const std::vector<std::string> original = manifest["args"];
  for (size_t i = 0; i < original.size(); ++i) {
    if (original[i] == "--manifest") {
      ++i;
      continue;
    }
    if (original[i].starts_with("--manifest=")) continue;
    args.push_back(original[i]);
  }
  if (manifest.contains("replay_extra_args")) {
    for (const Json& a : manifest["replay_extra_args"]) {
      args.push_back(a.get<std::string>());
    }
  }
  args.push_back("--manifest");
  args.push_back(replay_manifest);

  std::error_code ec;
  if (!std::filesystem::is_directory(manifest["cwd"].get<std::string>(), ec)) {
    return Failure{kExitError, "manifest working directory no longer exists"};
  }
  ScopedCwd cwd(manifest["cwd"].get<std::string>());
  for (const Json& input : manifest["inputs"]) {
    const std::string path = input["path"];
    absl::StatusOr<std::string> digest = Sha256File(path);
    if (!digest.ok() || *digest != input["sha256"].get<std::string>()) {
      return Failure{kExitReplayMismatch,
                     absl::StrCat("input changed since the run: ", path)};
    }
  }
  std::ostringstream inner_out;
  const int code = Run(args, inner_out, err);
  if (code != kExitOk) {
    return Failure{code, absl::StrCat("replayed command exited with ", code)};
  }
  bool identical = true;
  for (const Json& output : manifest["outputs"]) {
    const std::string path = output["path"];
    const bool timing = output.value("timing", false);
    const std::string expected =
        output[timing ? "sha256_without_timing" : "sha256"];
    bool same = false;
    if (std::ifstream file(path, std::ios::binary); file) {
      std::ostringstream content;
      content << file.rdbuf();
      same = expected == (timing ? Sha256Hex(DropLastCsvColumn(content.str()))
                                 : Sha256Hex(content.str()));
    }
    identical = identical && same;
    out << absl::StrFormat("replay: %s %s%s\n", path,
                           same ? "identical" : "DIFFERS",
                           timing ? " (timing column excluded)" : "");
  }
  if (!identical) return Failure{kExitReplayMismatch, "replay outputs differ"};
  out << "replay: all outputs identical\n";
  return std::nullopt;
}

void AddScenarioOptions(CLI::App* sub, ScenarioFlags& f) {
  auto* file = sub->add_option("--scenario", f.file,
                               "Scenario file (key = value lines)");
  auto* kind = sub->add_option(
      "--scenario-kind", f.kind,
      "Built-in scenario: positive_te, zero_te or graph_dependent");
  file->excludes(kind);
  sub->add_option("--model-seed", f.model_seed,
                  "Model seed for --scenario-kind");
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app("Bipartite experiment design: exposure moments, cluster "
               "designs and simulation.",
               "expodesign");
  app.require_subcommand(1);
  std::string manifest_override;
  app.add_option("--manifest", manifest_override,
                 "Manifest path (default: next to the primary output)");
  app.fallthrough();

  IngestFlags ingest;
  CLI::App* ingest_cmd =
      app.add_subcommand("ingest", "Edge list to binary graph snapshot");
  ingest_cmd->add_option("--input", ingest.input, "Edge list")->required();
  ingest_cmd->add_option("--out", ingest.out, "Snapshot path")->required();
  ingest_cmd->add_option("--min-degree", ingest.min_degree,
                         "Drop outcome units with fewer edges");
  ingest_cmd->add_flag("--normalize", ingest.normalize,
                       "Scale every row to sum to one");
  ingest_cmd->add_option("--outcome-groups", ingest.outcome_groups,
                         "Group outcome units into this many balanced groups");
  ingest_cmd->add_option("--group-seed", ingest.group_seed,
                         "Seed for --outcome-groups");

  ExportFlags export_flags;
  CLI::App* export_cmd =
      app.add_subcommand("export", "Graph snapshot to edge list");
  export_cmd->add_option("--graph", export_flags.graph, "Snapshot")->required();
  export_cmd->add_option("--out", export_flags.out, "Edge list")->required();

  DesignFlags design;
  CLI::App* design_cmd = app.add_subcommand("design", "Build a clustering");
  design_cmd->add_option("--graph", design.graph, "Snapshot")->required();
  design_cmd
      ->add_option("--method", design.method,
                   "singleton, one-cluster, balanced:<k> or exposure-design")
      ->required();
  design_cmd->add_option("--out", design.out, "Clustering file")->required();
  design_cmd->add_option("--phi", design.phi, "Trade-off parameter")
      ->capture_default_str();
  design_cmd->add_option("--k-max", design.k_max,
                         "Cluster size limit (0: none)");
  design_cmd->add_option("--p", design.p, "Treatment probability")
      ->capture_default_str();
  design_cmd->add_option("--seed", design.seed, "Random seed");
  design_cmd->add_option("--restarts", design.restarts, "Independent searches")
      ->capture_default_str();
  design_cmd->add_option("--passes", design.passes, "Pass limit (0: none)");
  design_cmd->add_option("--time-budget", design.time_budget,
                         "Seconds per search, checked between passes");
  design_cmd->add_option("--trace", design.trace, "Per-pass trace CSV");
  design_cmd
      ->add_option("--replay-pass-limits", design.replay_pass_limits,
                   "Pass count per restart")
      ->delimiter(',')
      ->group("");

  MomentsFlags moments;
  CLI::App* moments_cmd =
      app.add_subcommand("moments", "Exposure means and variances");
  moments_cmd->add_option("--graph", moments.graph, "Snapshot")->required();
  auto* moments_clustering =
      moments_cmd->add_option("--clustering", moments.clustering, "Clustering file");
  auto* moments_bernoulli =
      moments_cmd->add_flag("--bernoulli", moments.bernoulli, "Bernoulli design");
  moments_clustering->excludes(moments_bernoulli);
  moments_cmd->add_option("--p", moments.p, "Treatment probability")
      ->capture_default_str();
  moments_cmd->add_option("--out", moments.out, "CSV path")->required();

  SimulateFlags simulate;
  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "Replicated experiments under a design");
  simulate_cmd->add_option("--graph", simulate.graph, "Snapshot")->required();
  auto* sim_clustering = simulate_cmd->add_option(
      "--clustering", simulate.clustering, "Clustering file");
  auto* sim_bernoulli = simulate_cmd->add_flag("--bernoulli", simulate.bernoulli,
                                               "Bernoulli design");
  sim_clustering->excludes(sim_bernoulli);
  AddScenarioOptions(simulate_cmd, simulate.scenario);
  simulate_cmd->add_option("--replicates", simulate.replicates, "Replicates")
      ->capture_default_str();
  simulate_cmd->add_option("--seed", simulate.seed, "Base seed");
  simulate_cmd->add_option("--p", simulate.p, "Treatment probability")
      ->capture_default_str();
  simulate_cmd->add_option("--bins", simulate.bins, "Histogram bins")
      ->capture_default_str();
  simulate_cmd->add_option("--out-dir", simulate.out_dir, "Output directory")
      ->required();

  SweepFlags sweep;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "MSE across trade-off parameters");
  sweep_cmd->add_option("--graph", sweep.graph, "Snapshot")->required();
  AddScenarioOptions(sweep_cmd, sweep.scenario);
  sweep_cmd->add_option("--phis", sweep.phis, "Comma-separated phi values")
      ->required();
  sweep_cmd->add_option("--k-max", sweep.k_max, "Cluster size limit (0: none)");
  sweep_cmd->add_option("--p", sweep.p, "Treatment probability")
      ->capture_default_str();
  sweep_cmd->add_option("--seed", sweep.seed, "Search seed");
  sweep_cmd->add_option("--sim-seed", sweep.sim_seed,
                        "Simulation seed (default: --seed)");
  sweep_cmd->add_option("--restarts", sweep.restarts, "Searches per phi")
      ->capture_default_str();
  sweep_cmd->add_option("--passes", sweep.passes, "Pass limit (0: none)");
  sweep_cmd->add_option("--replicates", sweep.replicates, "Replicates per phi")
      ->capture_default_str();
  sweep_cmd->add_option("--out", sweep.out, "CSV path")->required();

  SynthFlags synth;
  CLI::App* synth_cmd = app.add_subcommand("synth", "Synthetic edge lists");
  synth_cmd->add_option("--kind", synth.kind, "planted or random")
      ->capture_default_str();
  synth_cmd->add_option("--n-outcome", synth.n_outcome, "Outcome units")
      ->capture_default_str();
  synth_cmd->add_option("--n-diversion", synth.n_diversion, "Diversion units")
      ->capture_default_str();
  synth_cmd->add_option("--blocks", synth.blocks, "Planted blocks")
      ->capture_default_str();
  synth_cmd->add_option("--degree", synth.degree, "Edges per outcome unit")
      ->capture_default_str();
  synth_cmd->add_option("--cross-block", synth.cross_block,
                        "Probability of an edge leaving its block");
  synth_cmd->add_option("--nnz", synth.nnz, "Edge count for random graphs");
  synth_cmd->add_option("--seed", synth.seed, "Random seed");
  synth_cmd->add_option("--out", synth.out, "Edge list")->required();

  ReplayFlags replay;
  CLI::App* replay_cmd =
      app.add_subcommand("replay", "Re-run a manifest and compare outputs");
  replay_cmd->add_option("manifest", replay.manifest, "Manifest")->required();

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.push_back("expodesign");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::optional<Failure> failure;
  if (ingest_cmd->parsed()) {
    failure = RunIngest(ingest, args, manifest_override, out);
  } else if (export_cmd->parsed()) {
    failure = RunExport(export_flags, args, manifest_override, out);
  } else if (design_cmd->parsed()) {
    failure = RunDesign(design, args, manifest_override, out);
  } else if (moments_cmd->parsed()) {
    if (moments.clustering.empty() && !moments.bernoulli) {
      failure = Failure{kExitUsage, "moments needs --clustering or --bernoulli"};
    } else {
      failure = RunMoments(moments, args, manifest_override, out);
    }
  } else if (simulate_cmd->parsed()) {
    if (simulate.clustering.empty() && !simulate.bernoulli) {
      failure = Failure{kExitUsage, "simulate needs --clustering or --bernoulli"};
    } else if (simulate.scenario.file.empty() && simulate.scenario.kind.empty()) {
      failure = Failure{kExitUsage, "simulate needs --scenario or --scenario-kind"};
    } else {
      failure = RunSimulate(simulate, args, manifest_override, out);
    }
  } else if (sweep_cmd->parsed()) {
    if (sweep.scenario.file.empty() && sweep.scenario.kind.empty()) {
      failure = Failure{kExitUsage, "sweep needs --scenario or --scenario-kind"};
    } else {
      failure = RunSweep(sweep, args, manifest_override, out);
    }
  } else if (synth_cmd->parsed()) {
    failure = RunSynth(synth, args, manifest_override, out);
  } else if (replay_cmd->parsed()) {
    failure = RunReplay(replay, out, err);
  }
  if (failure) {
    err << "expodesign: " << failure->message << "\n";
    return failure->code;
  }
  return kExitOk;
}

}  // namespace expodesign::cli
