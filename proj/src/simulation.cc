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

#include "expodesign/simulation.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "expodesign/parallel.h"
#include "expodesign/rng.h"
#include "json.hpp"

namespace expodesign {

absl::StatusOr<SimulationReport> RunSimulation(const BipartiteGraph& g,
                                               const DesignSpec& design,
                                               const OutcomeModel& model,
                                               const SimulationConfig& config) {
  if (config.replicates < 1) {
    return absl::InvalidArgumentError("replicates must be >= 1");
  }
  if (model.slopes.size() != g.n_outcome() ||
      model.intercepts.size() != g.n_outcome()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "outcome model size ", model.size(), " does not match ",
        g.n_outcome(), " outcome units"));
  }
  if (design.n_diversion() != g.n_diversion()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "design covers ", design.n_diversion(), " diversion units; graph has ",
        g.n_diversion()));
  }
  absl::StatusOr<ExposureMoments> moments = ComputeExposureMoments(g, design);
  if (!moments.ok()) return moments.status();

  SimulationReport report;
  report.design_name = design.Name();
  report.scenario_name = config.scenario_name;
  report.true_ate = TrueAte(model);
  const size_t replicates = config.replicates;
  report.estimates.resize(replicates);

  const size_t threads = std::clamp<size_t>(config.threads, 1, replicates);
  const size_t chunk = (replicates + threads - 1) / threads;
  ParallelFor(threads, threads, [&](size_t t) {
    std::vector<int8_t> coins;
    std::vector<int8_t> z;
    ExposureVector x;
    std::vector<double> y(g.n_outcome());
    const size_t end = std::min(replicates, (t + 1) * chunk);
    for (size_t r = t * chunk; r < end; ++r) {
      const uint64_t seed = DeriveSeed(config.base_seed, r);
      Rng rng(seed);
      SampleAssignmentInto(design, rng, coins, z);
      ComputeExposures(g, z, x);
      for (size_t i = 0; i < y.size(); ++i) {
        y[i] = model.slopes[i] * x[i] + model.intercepts[i];
      }
      report.estimates[r] = {ErlEstimateUnchecked(y, x, moments->mean,
                                                  moments->variance),
                             seed};
    }
  });

  const double count = static_cast<double>(replicates);
  double sum = 0.0;
  for (const EstimateSample& e : report.estimates) sum += e.estimate;
  report.mean = sum / count;
  double squared_error = 0.0;
  double squared_deviation = 0.0;
  for (const EstimateSample& e : report.estimates) {
    squared_error += (e.estimate - report.true_ate) * (e.estimate - report.true_ate);
    squared_deviation += (e.estimate - report.mean) * (e.estimate - report.mean);
  }
  report.bias = report.mean - report.true_ate;
  report.mse = squared_error / count;
  report.variance = squared_deviation / count;
  report.standard_error = std::sqrt(report.variance / count);
  return report;
}

absl::StatusOr<Histogram> MakeHistogram(std::span<const EstimateSample> estimates,
                                        size_t bins) {
  if (estimates.empty()) return absl::InvalidArgumentError("no estimates");
  if (bins < 1) return absl::InvalidArgumentError("bins must be >= 1");
  double lo = estimates.front().estimate;
  double hi = lo;
  for (const EstimateSample& e : estimates) {
    lo = std::min(lo, e.estimate);
    hi = std::max(hi, e.estimate);
  }
  Histogram h;
  h.edges.resize(bins + 1);
  for (size_t b = 0; b <= bins; ++b) {
    h.edges[b] = lo + (hi - lo) * (static_cast<double>(b) / static_cast<double>(bins));
  }
  h.edges.front() = lo;
  h.edges.back() = hi;
  h.counts.assign(bins, 0);
  for (const EstimateSample& e : estimates) {
    const auto it = std::upper_bound(h.edges.begin(), h.edges.end(), e.estimate);
    size_t bin = static_cast<size_t>(it - h.edges.begin());
    bin = bin == 0 ? 0 : std::min(bin - 1, bins - 1);
    ++h.counts[bin];
  }
  return h;
}

absl::Status WriteHistogramCsv(const SimulationReport& report, size_t bins,
                               std::ostream& out) {
  absl::StatusOr<Histogram> h = MakeHistogram(report.estimates, bins);
  if (!h.ok()) return h.status();
  out << "kind,bin_left,bin_right,count\n";
  for (size_t b = 0; b < bins; ++b) {
    out << absl::StrFormat("bin,%.17g,%.17g,%d\n", h->edges[b], h->edges[b + 1],
                           h->counts[b]);
  }
  out << absl::StrFormat("true_ate,%.17g,%.17g,0\n", report.true_ate,
                         report.true_ate);
  return absl::OkStatus();
}

absl::Status ExportHistogram(const SimulationReport& report, size_t bins,
                             const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  if (absl::Status s = WriteHistogramCsv(report, bins, out); !s.ok()) return s;
  out.close();
  if (!out) return absl::DataLossError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

void WriteEstimatesCsv(const SimulationReport& report, std::ostream& out) {
  out << "replicate,seed,estimate\n";
  for (size_t r = 0; r < report.estimates.size(); ++r) {
    out << absl::StrFormat("%d,%d,%.17g\n", r,
                           report.estimates[r].assignment_seed,
                           report.estimates[r].estimate);
  }
}

std::string ReportJson(const SimulationReport& report,
                       const SimulationConfig& config) {
  nlohmann::ordered_json j;
  j["design_name"] = report.design_name;
  j["scenario_name"] = report.scenario_name;
  j["replicates"] = report.estimates.size();
  j["base_seed"] = config.base_seed;
  j["true_ate"] = report.true_ate;
  j["mean"] = report.mean;
  j["bias"] = report.bias;
  j["mse"] = report.mse;
  j["variance"] = report.variance;
  j["standard_error"] = report.standard_error;
  return j.dump(2) + "\n";
}

}  // namespace expodesign
