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

#include "expodesign/objective.h"

#include <algorithm>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "expodesign/design.h"
#include "expodesign/enumeration.h"

namespace expodesign {
namespace {

absl::Status CheckClustering(const BipartiteGraph& g, const Clustering& c) {
  if (c.size() != g.n_diversion()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "clustering covers ", c.size(), " diversion units, graph has ",
        g.n_diversion()));
  }
  return absl::OkStatus();
}

absl::StatusOr<DesignSpec> ClusterDesign(const Clustering& c, double p) {
  return DesignSpec::IndependentCluster(c, p);
}

}  // namespace

ObjectiveValue MakeObjectiveValue(double variance_sum, double covariance_sum,
                                  double phi) {
  return {.variance_sum = variance_sum,
          .covariance_sum = covariance_sum,
          .phi = phi,
          .total = variance_sum - phi * covariance_sum};
}

absl::StatusOr<double> Omega(const BipartiteGraph& g, double phi, size_t i,
                             size_t j) {
  absl::StatusOr<double> coweight = DiversionCoweight(g, i, j);
  if (!coweight.ok()) return coweight.status();
  return (1.0 + phi) * *coweight - phi * g.ColSum(i) * g.ColSum(j);
}

absl::StatusOr<ObjectiveValue> Objective(const BipartiteGraph& g,
                                         const Clustering& c, double phi,
                                         double p) {
  absl::StatusOr<ClusterAggregatedWeights> agg =
      ClusterAggregatedWeights::Compute(g, c);
  if (!agg.ok()) return agg.status();
  const double v = 4.0 * p * (1.0 - p);
  double squared = 0.0;
  for (size_t i = 0; i < agg->n_outcome(); ++i) squared += agg->RowSquaredNorm(i);
  double totals_squared = 0.0;
  for (double total : agg->ClusterTotals()) totals_squared += total * total;
  return MakeObjectiveValue(v * squared, v * (totals_squared - squared), phi);
}

absl::StatusOr<double> CorrClustTotal(const BipartiteGraph& g,
                                      const Clustering& c, double phi) {
  if (absl::Status s = CheckClustering(g, c); !s.ok()) return s;
  double total = 0.0;
  for (const std::vector<uint32_t>& members : c.Members()) {
    for (size_t a = 0; a < members.size(); ++a) {
      total += *Omega(g, phi, members[a], members[a]);
      for (size_t b = a + 1; b < members.size(); ++b) {
        total += 2.0 * *Omega(g, phi, members[a], members[b]);
      }
    }
  }
  return total;
}

absl::StatusOr<ObjectiveValue> ObjectiveFromEnumeration(const BipartiteGraph& g,
                                                        const Clustering& c,
                                                        double phi, double p) {
  if (absl::Status s = CheckClustering(g, c); !s.ok()) return s;
  absl::StatusOr<DesignSpec> design = ClusterDesign(c, p);
  if (!design.ok()) return design.status();
  absl::StatusOr<ExactEnumerator> oracle = ExactEnumerator::Create(g, *design);
  if (!oracle.ok()) return oracle.status();
  const ExactEnumerator::Moments mom = oracle->ComputeMoments();
  double variance_sum = 0.0;
  double covariance_sum = 0.0;
  const size_t n = g.n_outcome();
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (i == j) {
        variance_sum += mom.Cov(i, i);
      } else {
        covariance_sum += mom.Cov(i, j);
      }
    }
  }
  return MakeObjectiveValue(variance_sum, covariance_sum, phi);
}

absl::StatusOr<double> ExposureSpreadObjective(const BipartiteGraph& g,
                                               const Clustering& c, double p,
                                               SpreadRoute route) {
  if (absl::Status s = CheckClustering(g, c); !s.ok()) return s;
  const size_t n = g.n_outcome();
  if (n == 0) return 0.0;
  const double inv_n = 1.0 / static_cast<double>(n);
  if (route == SpreadRoute::kEnumeration) {
    absl::StatusOr<DesignSpec> design = ClusterDesign(c, p);
    if (!design.ok()) return design.status();
    absl::StatusOr<ExactEnumerator> oracle =
        ExactEnumerator::Create(g, *design);
    if (!oracle.ok()) return oracle.status();
    return oracle->Expect([inv_n](std::span<const double> x) {
      double mean = 0.0;
      for (double xi : x) mean += xi;
      mean *= inv_n;
      double spread = 0.0;
      for (double xi : x) spread += (xi - mean) * (xi - mean);
      return spread;
    });
  }
  // E[Q] = sum_i E[x_i^2] - (1/n) E[(sum_i x_i)^2]; both split into a
  // variance part from the aggregates and a squared-mean part.
  absl::StatusOr<ClusterAggregatedWeights> agg =
      ClusterAggregatedWeights::Compute(g, c);
  if (!agg.ok()) return agg.status();
  const double v = 4.0 * p * (1.0 - p);
  const double coin_mean = 2.0 * p - 1.0;
  double squared = 0.0;
  double mean_squares = 0.0;
  double mean_sum = 0.0;
  for (size_t i = 0; i < n; ++i) {
    squared += agg->RowSquaredNorm(i);
    const double mean = coin_mean * g.RowSum(i);
    mean_squares += mean * mean;
    mean_sum += mean;
  }
  double totals_squared = 0.0;
  for (double total : agg->ClusterTotals()) totals_squared += total * total;
  return v * (squared - inv_n * totals_squared) + mean_squares -
         inv_n * mean_sum * mean_sum;
}

double ExposureSpreadOffset(const BipartiteGraph& g, double p) {
  // W E[z] = (2p - 1) * row sums; the offset is the squared norm of its
  // de-meaned version.
  const size_t n = g.n_outcome();
  if (n == 0) return 0.0;
  const double coin_mean = 2.0 * p - 1.0;
  std::vector<double> mean_exposure(n);
  double average = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mean_exposure[i] = coin_mean * g.RowSum(i);
    average += mean_exposure[i];
  }
  average /= static_cast<double>(n);
  double offset = 0.0;
  for (double mu : mean_exposure) offset += (mu - average) * (mu - average);
  return offset;
}

absl::StatusOr<CorrClustCsValue> CorrClustCsRewrite(const BipartiteGraph& g,
                                                    double phi,
                                                    const Clustering& c) {
  if (absl::Status s = CheckClustering(g, c); !s.ok()) return s;
  const size_t m = g.n_diversion();
  if (m > kMaxDenseOmegaUnits) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "dense omega needs m <= ", kMaxDenseOmegaUnits, ", got ", m));
  }
  // Coweights accumulated per outcome unit, then the rank-one part.
  std::vector<double> omega(m * m, 0.0);
  for (size_t k = 0; k < g.n_outcome(); ++k) {
    for (const BipartiteGraph::Entry& a : g.Row(k)) {
      for (const BipartiteGraph::Entry& b : g.Row(k)) {
        omega[a.index * m + b.index] += a.weight * b.weight;
      }
    }
  }
  CorrClustCsValue value;
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) {
      const double w = (1.0 + phi) * omega[i * m + j] -
                       phi * g.ColSum(i) * g.ColSum(j);
      const bool same = c.ClusterOf(i) == c.ClusterOf(j);
      if (same) {
        value.corr_clust_total += w;
        value.in_weight += std::max(0.0, w);
      } else {
        value.out_weight += -std::min(0.0, w);
      }
      value.constant += std::min(0.0, w);
    }
  }
  return value;
}

}  // namespace expodesign
