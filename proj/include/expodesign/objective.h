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

#ifndef EXPODESIGN_OBJECTIVE_H_
#define EXPODESIGN_OBJECTIVE_H_

#include <cstddef>

#include "absl/status/statusor.h"
#include "expodesign/clustering.h"
#include "expodesign/graph.h"

namespace expodesign {

// sum_i Var[x_i] - phi * sum_{i != j} Cov[x_i, x_j] under the independent
// cluster design with treatment probability p.
struct ObjectiveValue {
  double variance_sum = 0.0;
  double covariance_sum = 0.0;
  double phi = 0.0;
  double total = 0.0;
};

ObjectiveValue MakeObjectiveValue(double variance_sum, double covariance_sum,
                                  double phi);

// omega_{i,j} = (1 + phi) c_{i,j} - phi s_i s_j.
absl::StatusOr<double> Omega(const BipartiteGraph& g, double phi, size_t i,
                             size_t j);

// Closed form from cluster aggregates, with v = 4p(1-p):
//   variance_sum   = v sum_i sum_C Wc[i,C]^2
//   covariance_sum = v (sum_C S_C^2 - sum_i sum_C Wc[i,C]^2)
absl::StatusOr<ObjectiveValue> Objective(const BipartiteGraph& g,
                                         const Clustering& c, double phi,
                                         double p);

// sum_C sum_{i,j in C} omega_{i,j}, summed pair by pair. Multiply by
// 4p(1-p) to get Objective(...).total. Cost grows with sum_C |C|^2.
absl::StatusOr<double> CorrClustTotal(const BipartiteGraph& g,
                                      const Clustering& c, double phi);

// The objective assembled from exactly enumerated exposure moments. Limited
// to kMaxEnumerationClusters clusters.
absl::StatusOr<ObjectiveValue> ObjectiveFromEnumeration(const BipartiteGraph& g,
                                                        const Clustering& c,
                                                        double phi, double p);

enum class SpreadRoute { kClosedForm, kEnumeration };

// E[sum_i (x_i - mean_j x_j)^2] under the cluster design.
absl::StatusOr<double> ExposureSpreadObjective(const BipartiteGraph& g,
                                               const Clustering& c, double p,
                                               SpreadRoute route);

// tr(W^T (I - 11^T/n) W E[z] E[z]^T): the clustering-independent offset
// between the exposure spread and (n-1)/n times the objective at
// phi = 1/(n-1).
double ExposureSpreadOffset(const BipartiteGraph& g, double p);

// Corr-Clust-CS view of a clustering: with w_in = max(0, omega) on in-cluster
// pairs and w_out = -min(0, omega) on out-cluster pairs (ordered pairs, the
// diagonal counted as in-cluster),
//   corr_clust_total - constant = in_weight + out_weight,
// where constant = sum_{i,j} min(0, omega_{i,j}).
struct CorrClustCsValue {
  double corr_clust_total = 0.0;
  double in_weight = 0.0;
  double out_weight = 0.0;
  double constant = 0.0;

  double cs_total() const { return in_weight + out_weight; }
};

// Materializes the dense m x m omega matrix, so m is capped.
inline constexpr size_t kMaxDenseOmegaUnits = 4096;

absl::StatusOr<CorrClustCsValue> CorrClustCsRewrite(const BipartiteGraph& g,
                                                    double phi,
                                                    const Clustering& c);

}  // namespace expodesign

#endif  // EXPODESIGN_OBJECTIVE_H_
