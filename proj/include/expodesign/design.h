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

#ifndef EXPODESIGN_DESIGN_H_
#define EXPODESIGN_DESIGN_H_

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "expodesign/clustering.h"
#include "expodesign/graph.h"
#include "expodesign/rng.h"

namespace expodesign {

// Exposure variances below this make 1/Var[x_i] blow up; such designs are
// rejected as degenerate.
inline constexpr double kVarianceFloor = 1e-10;

enum class DesignKind { kBernoulli, kIndependentCluster };

// Independent cluster design: every cluster flips one coin, +1 with
// probability p, shared by all of its members. Bernoulli(p) is the
// all-singleton special case.
class DesignSpec {
 public:
  static absl::StatusOr<DesignSpec> Bernoulli(size_t n_diversion, double p);
  static absl::StatusOr<DesignSpec> IndependentCluster(Clustering clustering,
                                                       double p);

  DesignKind kind() const { return kind_; }
  double p() const { return p_; }
  const Clustering& clustering() const { return clustering_; }
  size_t n_diversion() const { return clustering_.size(); }
  size_t num_clusters() const { return clustering_.num_clusters(); }
  // Var of a single +-1 coin: 4p(1-p).
  double CoinVariance() const { return 4.0 * p_ * (1.0 - p_); }
  std::string Name() const;

 private:
  DesignSpec(DesignKind kind, Clustering clustering, double p)
      : kind_(kind), p_(p), clustering_(std::move(clustering)) {}

  DesignKind kind_;
  double p_;
  Clustering clustering_;
};

// One draw from the design. Deterministic given the generator state.
AssignmentVector SampleAssignment(const DesignSpec& design, Rng& rng);
// Allocation-free variant; `coins` and `z` are scratch buffers.
void SampleAssignmentInto(const DesignSpec& design, Rng& rng,
                          std::vector<int8_t>& coins, std::vector<int8_t>& z);

// Sparse per-(outcome unit, cluster) aggregates Wc[i, C] = sum_{j in C}
// w_{i,j}, plus per-cluster totals S_C = sum_{j in C} s_j. Each row sums to
// the corresponding row of W.
class ClusterAggregatedWeights {
 public:
  struct Entry {
    uint32_t cluster;
    double weight;
  };

  static absl::StatusOr<ClusterAggregatedWeights> Compute(
      const BipartiteGraph& g, const Clustering& c);

  size_t n_outcome() const { return offsets_.size() - 1; }
  size_t num_clusters() const { return cluster_totals_.size(); }
  std::span<const Entry> Row(size_t i) const {
    return {entries_.data() + offsets_[i], entries_.data() + offsets_[i + 1]};
  }
  double ClusterTotal(size_t c) const { return cluster_totals_[c]; }
  std::span<const double> ClusterTotals() const { return cluster_totals_; }
  // sum_C Wc[i, C]^2
  double RowSquaredNorm(size_t i) const;
  // sum_C Wc[i, C] Wc[j, C]
  double RowDot(size_t i, size_t j) const;

 private:
  std::vector<size_t> offsets_{0};
  std::vector<Entry> entries_;
  std::vector<double> cluster_totals_;
};

struct ExposureMoments {
  std::vector<double> mean;
  std::vector<double> variance;
  DesignSpec design;
};

// E[x_i] = (2p - 1) sum_j w_{i,j}; Var[x_i] = 4p(1-p) sum_C Wc[i, C]^2.
// Fails with FailedPrecondition, listing the offending outcome units, when
// any variance is below kVarianceFloor.
absl::StatusOr<ExposureMoments> ComputeExposureMoments(const BipartiteGraph& g,
                                                       const DesignSpec& d);

// Cov[x_i, x_j] = 4p(1-p) sum_C Wc[i, C] Wc[j, C].
absl::StatusOr<double> ExposureCovPair(const BipartiteGraph& g,
                                       const DesignSpec& d, size_t i,
                                       size_t j);

// CSV with header `outcome_id,mean,variance`.
void WriteMomentsCsv(const ExposureMoments& moments, const BipartiteGraph& g,
                     std::ostream& out);

}  // namespace expodesign

#endif  // EXPODESIGN_DESIGN_H_
