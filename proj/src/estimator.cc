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

#include "expodesign/estimator.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "expodesign/enumeration.h"

namespace expodesign {
namespace {

absl::Status CheckModel(const BipartiteGraph& g, const OutcomeModel& model) {
  if (model.slopes.size() != g.n_outcome() ||
      model.intercepts.size() != g.n_outcome()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "outcome model has ", model.slopes.size(), " slopes and ",
        model.intercepts.size(), " intercepts; graph has ", g.n_outcome(),
        " outcome units"));
  }
  return absl::OkStatus();
}

absl::Status CheckVariances(std::span<const double> variance) {
  for (size_t i = 0; i < variance.size(); ++i) {
    if (!(variance[i] >= kVarianceFloor)) {
      return absl::FailedPreconditionError(absl::StrCat(
          "degenerate design: exposure variance of outcome unit ", i, " is ",
          variance[i]));
    }
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<std::vector<double>> Respond(const OutcomeModel& model,
                                            std::span<const double> x) {
  if (x.size() != model.size() || model.intercepts.size() != model.size()) {
    return absl::InvalidArgumentError("exposure and model lengths differ");
  }
  std::vector<double> y(x.size());
  for (size_t i = 0; i < y.size(); ++i) {
    y[i] = model.slopes[i] * x[i] + model.intercepts[i];
  }
  return y;
}

double TrueAte(const OutcomeModel& model) {
  if (model.size() == 0) return 0.0;
  double sum = 0.0;
  for (double m : model.slopes) sum += m;
  return 2.0 * sum / static_cast<double>(model.size());
}

double ErlEstimateUnchecked(std::span<const double> y, std::span<const double> x,
                            std::span<const double> mean,
                            std::span<const double> variance) {
  double sum = 0.0;
  for (size_t i = 0; i < y.size(); ++i) {
    sum += y[i] * (x[i] - mean[i]) / variance[i];
  }
  return 2.0 * sum / static_cast<double>(y.size());
}

absl::StatusOr<double> ErlEstimate(std::span<const double> y,
                                   std::span<const double> x,
                                   const ExposureMoments& moments) {
  if (y.size() != x.size() || x.size() != moments.mean.size() ||
      moments.variance.size() != moments.mean.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "length mismatch: ", y.size(), " outcomes, ", x.size(),
        " exposures, ", moments.mean.size(), " moments"));
  }
  if (y.empty()) return absl::InvalidArgumentError("no outcome units");
  if (absl::Status s = CheckVariances(moments.variance); !s.ok()) return s;
  return ErlEstimateUnchecked(y, x, moments.mean, moments.variance);
}

absl::StatusOr<double> MseExact(const BipartiteGraph& g, const DesignSpec& d,
                                const OutcomeModel& model) {
  if (absl::Status s = CheckModel(g, model); !s.ok()) return s;
  absl::StatusOr<ExactEnumerator> oracle = ExactEnumerator::Create(g, d);
  if (!oracle.ok()) return oracle.status();
  const ExactEnumerator::Moments moments = oracle->ComputeMoments();
  if (absl::Status s = CheckVariances(moments.variance); !s.ok()) return s;
  const double tau = TrueAte(model);
  std::vector<double> y(g.n_outcome());
  return oracle->Expect([&](std::span<const double> x) {
    for (size_t i = 0; i < y.size(); ++i) {
      y[i] = model.slopes[i] * x[i] + model.intercepts[i];
    }
    const double error =
        ErlEstimateUnchecked(y, x, moments.mean, moments.variance) - tau;
    return error * error;
  });
}

absl::StatusOr<double> MseByUnitDecomposition(const BipartiteGraph& g,
                                              const DesignSpec& d,
                                              const OutcomeModel& model) {
  if (absl::Status s = CheckModel(g, model); !s.ok()) return s;
  absl::StatusOr<ExactEnumerator> oracle = ExactEnumerator::Create(g, d);
  if (!oracle.ok()) return oracle.status();
  const ExactEnumerator::Moments mom = oracle->ComputeMoments();
  if (absl::Status s = CheckVariances(mom.variance); !s.ok()) return s;
  const std::vector<double>& m = model.slopes;
  const std::vector<double>& b = model.intercepts;
  const size_t n = g.n_outcome();
  // Standardized deviation (x_i - E x_i) / Var x_i.
  auto dev = [&](std::span<const double> x, size_t i) {
    return (x[i] - mom.mean[i]) / mom.variance[i];
  };
  double sum = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double var_theta = 4.0 * oracle->Expect([&](std::span<const double> x) {
      const double t =
          m[i] * ((x[i] * x[i] - x[i] * mom.mean[i]) / mom.variance[i] - 1.0) +
          b[i] * dev(x, i);
      return t * t;
    });
    sum += var_theta;
  }
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const double cov_theta =
          4.0 * oracle->Expect([&](std::span<const double> x) {
            return (m[i] * x[i] + b[i]) * (m[j] * x[j] + b[j]) * dev(x, i) *
                   dev(x, j);
          }) -
          4.0 * m[i] * m[j];
      sum += 2.0 * cov_theta;
    }
  }
  return sum / static_cast<double>(n * n);
}

absl::StatusOr<double> MseZeroSlope(const BipartiteGraph& g,
                                    const DesignSpec& d,
                                    const OutcomeModel& model) {
  if (absl::Status s = CheckModel(g, model); !s.ok()) return s;
  for (size_t i = 0; i < model.size(); ++i) {
    if (model.slopes[i] != 0.0) {
      return absl::FailedPreconditionError(absl::StrCat(
          "zero-slope MSE requires every slope to be 0; slope ", i, " is ",
          model.slopes[i]));
    }
  }
  absl::StatusOr<ExposureMoments> mom = ComputeExposureMoments(g, d);
  if (!mom.ok()) return mom.status();
  absl::StatusOr<ClusterAggregatedWeights> agg =
      ClusterAggregatedWeights::Compute(g, d.clustering());
  if (!agg.ok()) return agg.status();
  const std::vector<double>& b = model.intercepts;
  const std::vector<double>& var = mom->variance;
  const size_t n = g.n_outcome();
  double sum = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sum += b[i] * b[i] / var[i];
    if (b[i] == 0.0) continue;
    for (size_t j = i + 1; j < n; ++j) {
      const double cov = d.CoinVariance() * agg->RowDot(i, j);
      sum += 2.0 * b[i] * b[j] * cov / (var[i] * var[j]);
    }
  }
  return 4.0 * sum / static_cast<double>(n * n);
}

absl::StatusOr<double> MseZeroInterceptBound(const BipartiteGraph& g,
                                             const DesignSpec& d,
                                             const OutcomeModel& model) {
  if (absl::Status s = CheckModel(g, model); !s.ok()) return s;
  for (size_t i = 0; i < model.size(); ++i) {
    if (model.intercepts[i] != 0.0) {
      return absl::FailedPreconditionError(absl::StrCat(
          "zero-intercept bound requires every intercept to be 0; intercept ",
          i, " is ", model.intercepts[i]));
    }
  }
  if (d.p() != 0.5) {
    return absl::FailedPreconditionError(
        absl::StrCat("zero-intercept bound requires p = 1/2, got ", d.p()));
  }
  absl::StatusOr<ExposureMoments> mom = ComputeExposureMoments(g, d);
  if (!mom.ok()) return mom.status();
  absl::StatusOr<ExactEnumerator> oracle = ExactEnumerator::Create(g, d);
  if (!oracle.ok()) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "E[x_i^2 x_j^2] unavailable: ", oracle.status().message()));
  }
  const std::vector<double>& m = model.slopes;
  const std::vector<double>& var = mom->variance;
  const size_t n = g.n_outcome();
  double sum = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sum += m[i] * m[i] * (1.0 / var[i] - 1.0);
    if (m[i] == 0.0) continue;
    for (size_t j = i + 1; j < n; ++j) {
      const double fourth = oracle->Expect([i, j](std::span<const double> x) {
        return x[i] * x[i] * x[j] * x[j];
      });
      sum += 2.0 * m[i] * m[j] * (fourth / (var[i] * var[j]) - 1.0);
    }
  }
  return 4.0 * sum / static_cast<double>(n * n);
}

}  // namespace expodesign
