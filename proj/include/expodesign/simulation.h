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

#ifndef EXPODESIGN_SIMULATION_H_
#define EXPODESIGN_SIMULATION_H_

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "expodesign/design.h"
#include "expodesign/estimator.h"
#include "expodesign/graph.h"

namespace expodesign {

inline constexpr size_t kDefaultReplicates = 5000;

struct SimulationConfig {
  size_t replicates = kDefaultReplicates;
  uint64_t base_seed = 0;
  size_t threads = 1;
  std::string scenario_name = "custom";
};

struct Histogram {
  std::vector<double> edges;  // bins + 1 edges, edges.front() = min, back() = max
  std::vector<size_t> counts;
};

struct SimulationReport {
  std::string design_name;
  std::string scenario_name;
  double true_ate = 0.0;
  std::vector<EstimateSample> estimates;  // by replicate index
  double mean = 0.0;
  double bias = 0.0;
  double mse = 0.0;
  // Sample variance with divisor R, so that mse = bias^2 + variance.
  double variance = 0.0;
  // sqrt(variance / R).
  double standard_error = 0.0;
};

// Replicate r draws its assignment from Rng(DeriveSeed(base_seed, r)), so
// the report does not depend on the thread count.
absl::StatusOr<SimulationReport> RunSimulation(const BipartiteGraph& g,
                                               const DesignSpec& design,
                                               const OutcomeModel& model,
                                               const SimulationConfig& config);

// Equal-width bins spanning [min, max] of the estimates. A bin holds values
// in [left, right); the last bin also holds max.
absl::StatusOr<Histogram> MakeHistogram(std::span<const EstimateSample> estimates,
                                        size_t bins);

// `kind,bin_left,bin_right,count` rows of kind "bin", then one "true_ate" row
// with both edges at the true ATE and count 0.
absl::Status WriteHistogramCsv(const SimulationReport& report, size_t bins,
                               std::ostream& out);
absl::Status ExportHistogram(const SimulationReport& report, size_t bins,
                             const std::string& path);

// `replicate,seed,estimate`.
void WriteEstimatesCsv(const SimulationReport& report, std::ostream& out);

// Metadata and aggregates; estimates are not included.
std::string ReportJson(const SimulationReport& report,
                       const SimulationConfig& config);

}  // namespace expodesign

#endif  // EXPODESIGN_SIMULATION_H_
