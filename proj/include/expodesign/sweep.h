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

#ifndef EXPODESIGN_SWEEP_H_
#define EXPODESIGN_SWEEP_H_

#include <cstddef>
#include <ostream>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "expodesign/clustering.h"
#include "expodesign/estimator.h"
#include "expodesign/graph.h"
#include "expodesign/local_search.h"
#include "expodesign/simulation.h"

namespace expodesign {

struct SweepRow {
  double phi = 0.0;
  size_t num_clusters = 0;
  size_t max_cluster_size = 0;
  ObjectiveValue objective;
  // Expected empirical variance of the exposures under the found design.
  double exposure_spread = 0.0;
  double mse = 0.0;
  double bias = 0.0;
  double standard_error = 0.0;
  Clustering clustering;
};

// For each phi: local search with `search` (phi and p overridden), an
// independent cluster design with treatment probability `p`, and a
// simulation with `sim`. Every phi reuses the same model, search seed and
// simulation seed.
absl::StatusOr<std::vector<SweepRow>> PhiSweep(const BipartiteGraph& g,
                                               const OutcomeModel& model,
                                               std::span<const double> phis,
                                               const LocalSearchConfig& search,
                                               size_t restarts, double p,
                                               const SimulationConfig& sim);

// `phi,n_clusters,max_cluster_size,objective_total,exposure_spread,mse,bias,standard_error`.
void WriteSweepCsv(std::span<const SweepRow> rows, std::ostream& out);

}  // namespace expodesign

#endif  // EXPODESIGN_SWEEP_H_
