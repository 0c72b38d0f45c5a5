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

#ifndef EXPODESIGN_ESTIMATOR_H_
#define EXPODESIGN_ESTIMATOR_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "expodesign/design.h"
#include "expodesign/graph.h"

namespace expodesign {

// Linear exposure-response model: Y_i = slope_i * x_i + intercept_i.
struct OutcomeModel {
  std::vector<double> slopes;
  std::vector<double> intercepts;

  size_t size() const { return slopes.size(); }
};

struct EstimateSample {
  double estimate;
  uint64_t assignment_seed;
};

absl::StatusOr<std::vector<double>> Respond(const OutcomeModel& model,
                                            std::span<const double> x);

// (2/n) sum_i slope_i.
double TrueAte(const OutcomeModel& model);

// Exposure reweighted linear estimate
//   (2/n) sum_i y_i (x_i - E[x_i]) / Var[x_i].
absl::StatusOr<double> ErlEstimate(std::span<const double> y,
                                   std::span<const double> x,
                                   const ExposureMoments& moments);

// Same, without checks, using raw mean/variance spans. For hot loops.
double ErlEstimateUnchecked(std::span<const double> y, std::span<const double> x,
                            std::span<const double> mean,
                            std::span<const double> variance);

// The MSE routines below treat the model as ground truth; they are
// simulation-side diagnostics.

// E[(tau_hat - tau)^2] by exact enumeration of the design, with exposure
// moments also taken from the enumeration. Requires at most
// kMaxEnumerationClusters clusters.
absl::StatusOr<double> MseExact(const BipartiteGraph& g, const DesignSpec& d,
                                const OutcomeModel& model);

// (1/n^2)[sum_i Var(theta_i) + 2 sum_{i<j} Cov(theta_i, theta_j)] for the
// per-unit effect estimates theta_i = 2 y_i (x_i - E x_i) / Var x_i, with
// every term evaluated separately by enumeration.
absl::StatusOr<double> MseByUnitDecomposition(const BipartiteGraph& g,
                                              const DesignSpec& d,
                                              const OutcomeModel& model);

// Closed form when every slope is zero:
//   (4/n^2)[sum_i b_i^2 / Var x_i
//           + 2 sum_{i<j} b_i b_j Cov(x_i, x_j) / (Var x_i Var x_j)].
// Uses the analytic moments.
absl::StatusOr<double> MseZeroSlope(const BipartiteGraph& g,
                                    const DesignSpec& d,
                                    const OutcomeModel& model);

// Upper bound when every intercept is zero and p = 1/2:
//   (4/n^2)[sum_i m_i^2 (1/Var x_i - 1)
//           + 2 sum_{i<j} m_i m_j (E[x_i^2 x_j^2] / (Var x_i Var x_j) - 1)].
// E[x_i^2 x_j^2] comes from enumeration, so this is limited to designs with
// at most kMaxEnumerationClusters clusters (ResourceExhausted otherwise).
absl::StatusOr<double> MseZeroInterceptBound(const BipartiteGraph& g,
                                             const DesignSpec& d,
                                             const OutcomeModel& model);

}  // namespace expodesign

#endif  // EXPODESIGN_ESTIMATOR_H_
