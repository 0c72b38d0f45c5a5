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

#include "expodesign/sweep.h"

#include "absl/strings/str_format.h"
#include "expodesign/design.h"
#include "expodesign/objective.h"

namespace expodesign {

absl::StatusOr<std::vector<SweepRow>> PhiSweep(const BipartiteGraph& g,
                                               const OutcomeModel& model,
                                               std::span<const double> phis,
                                               const LocalSearchConfig& search,
                                               size_t restarts, double p,
                                               const SimulationConfig& sim) {
  if (phis.empty()) return absl::InvalidArgumentError("empty phi list");
  std::vector<SweepRow> rows;
  rows.reserve(phis.size());
  for (double phi : phis) {
    LocalSearchConfig config = search;
    config.phi = phi;
    config.p = p;
    absl::StatusOr<LocalSearchResult> found =
        LocalSearchWithRestarts(g, config, restarts, sim.threads);
    if (!found.ok()) return found.status();
    absl::StatusOr<DesignSpec> design =
        DesignSpec::IndependentCluster(found->clustering, p);
    if (!design.ok()) return design.status();
    absl::StatusOr<SimulationReport> report = RunSimulation(g, *design, model, sim);
    if (!report.ok()) return report.status();
    absl::StatusOr<double> spread = ExposureSpreadObjective(
        g, found->clustering, p, SpreadRoute::kClosedForm);
    if (!spread.ok()) return spread.status();

    SweepRow row;
    row.phi = phi;
    row.num_clusters = found->clustering.num_clusters();
    row.max_cluster_size = found->clustering.MaxClusterSize();
    row.objective = found->objective;
    row.exposure_spread = *spread;
    row.mse = report->mse;
    row.bias = report->bias;
    row.standard_error = report->standard_error;
    row.clustering = std::move(found->clustering);
    rows.push_back(std::move(row));
  }
  return rows;
}

void WriteSweepCsv(std::span<const SweepRow> rows, std::ostream& out) {
  out << "phi,n_clusters,max_cluster_size,objective_total,exposure_spread,mse,"
         "bias,standard_error\n";
  for (const SweepRow& r : rows) {
    out << absl::StrFormat("%.17g,%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.phi,
                           r.num_clusters, r.max_cluster_size,
                           r.objective.total, r.exposure_spread, r.mse, r.bias,
                           r.standard_error);
  }
}

}  // namespace expodesign
