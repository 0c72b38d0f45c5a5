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

#include "expodesign/design.h"

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"

namespace expodesign {
namespace {

absl::Status CheckProbability(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("treatment probability must lie in (0, 1), got ", p));
  }
  return absl::OkStatus();
}

absl::Status CheckDesignMatchesGraph(const BipartiteGraph& g,
                                     const DesignSpec& d) {
  if (d.n_diversion() != g.n_diversion()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "design covers ", d.n_diversion(), " diversion units, graph has ",
        g.n_diversion()));
  }
  return absl::OkStatus();
}

// Aggregates row i of W by cluster into `out`, sorted by cluster id.
void AggregateRow(const BipartiteGraph& g, const Clustering& c, size_t i,
                  std::vector<ClusterAggregatedWeights::Entry>& out) {
  out.clear();
  for (const BipartiteGraph::Entry& e : g.Row(i)) {
    out.push_back({c.ClusterOf(e.index), e.weight});
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.cluster < b.cluster; });
  size_t write = 0;
  for (size_t read = 0; read < out.size(); ++read) {
    if (write > 0 && out[write - 1].cluster == out[read].cluster) {
      out[write - 1].weight += out[read].weight;
    } else {
      out[write++] = out[read];
    }
  }
  out.resize(write);
}

double DotByCluster(std::span<const ClusterAggregatedWeights::Entry> a,
                    std::span<const ClusterAggregatedWeights::Entry> b) {
  double sum = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->cluster < ib->cluster) {
      ++ia;
    } else if (ib->cluster < ia->cluster) {
      ++ib;
    } else {
      sum += ia->weight * ib->weight;
      ++ia;
      ++ib;
    }
  }
  return sum;
}

}  // namespace

absl::StatusOr<DesignSpec> DesignSpec::Bernoulli(size_t n_diversion,
                                                 double p) {
  if (absl::Status s = CheckProbability(p); !s.ok()) return s;
  return DesignSpec(DesignKind::kBernoulli, Clustering::Singletons(n_diversion),
                    p);
}

absl::StatusOr<DesignSpec> DesignSpec::IndependentCluster(Clustering clustering,
                                                          double p) {
  if (absl::Status s = CheckProbability(p); !s.ok()) return s;
  return DesignSpec(DesignKind::kIndependentCluster, std::move(clustering), p);
}

std::string DesignSpec::Name() const {
  if (kind_ == DesignKind::kBernoulli) {
    return absl::StrFormat("bernoulli(p=%g)", p_);
  }
  return absl::StrFormat("cluster(k=%d,p=%g)", num_clusters(), p_);
}

void SampleAssignmentInto(const DesignSpec& design, Rng& rng,
                          std::vector<int8_t>& coins, std::vector<int8_t>& z) {
  coins.resize(design.num_clusters());
  for (int8_t& coin : coins) coin = rng.Bernoulli(design.p()) ? 1 : -1;
  const std::span<const uint32_t> cluster_of = design.clustering().assignment();
  z.resize(cluster_of.size());
  for (size_t j = 0; j < z.size(); ++j) z[j] = coins[cluster_of[j]];
}

AssignmentVector SampleAssignment(const DesignSpec& design, Rng& rng) {
  std::vector<int8_t> coins, z;
  SampleAssignmentInto(design, rng, coins, z);
  AssignmentVector out(z.size());
  for (size_t j = 0; j < z.size(); ++j) out.Set(j, z[j] > 0);
  return out;
}

absl::StatusOr<ClusterAggregatedWeights> ClusterAggregatedWeights::Compute(
    const BipartiteGraph& g, const Clustering& c) {
  if (c.size() != g.n_diversion()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "clustering covers ", c.size(), " diversion units, graph has ",
        g.n_diversion()));
  }
  ClusterAggregatedWeights agg;
  agg.offsets_.reserve(g.n_outcome() + 1);
  std::vector<Entry> row;
  for (size_t i = 0; i < g.n_outcome(); ++i) {
    AggregateRow(g, c, i, row);
    agg.entries_.insert(agg.entries_.end(), row.begin(), row.end());
    agg.offsets_.push_back(agg.entries_.size());
  }
  agg.cluster_totals_.assign(c.num_clusters(), 0.0);
  for (size_t j = 0; j < g.n_diversion(); ++j) {
    agg.cluster_totals_[c.ClusterOf(j)] += g.ColSum(j);
  }
  return agg;
}

double ClusterAggregatedWeights::RowSquaredNorm(size_t i) const {
  double sum = 0.0;
  for (const Entry& e : Row(i)) sum += e.weight * e.weight;
  return sum;
}

double ClusterAggregatedWeights::RowDot(size_t i, size_t j) const {
  return DotByCluster(Row(i), Row(j));
}

absl::StatusOr<ExposureMoments> ComputeExposureMoments(const BipartiteGraph& g,
                                                       const DesignSpec& d) {
  if (absl::Status s = CheckDesignMatchesGraph(g, d); !s.ok()) return s;
  absl::StatusOr<ClusterAggregatedWeights> agg =
      ClusterAggregatedWeights::Compute(g, d.clustering());
  if (!agg.ok()) return agg.status();
  const double coin_mean = 2.0 * d.p() - 1.0;
  ExposureMoments moments{.mean = std::vector<double>(g.n_outcome()),
                          .variance = std::vector<double>(g.n_outcome()),
                          .design = d};
  std::vector<std::string> degenerate;
  size_t degenerate_count = 0;
  for (size_t i = 0; i < g.n_outcome(); ++i) {
    moments.mean[i] = coin_mean * g.RowSum(i);
    moments.variance[i] = d.CoinVariance() * agg->RowSquaredNorm(i);
    if (!(moments.variance[i] >= kVarianceFloor)) {
      if (degenerate.size() < 20) degenerate.push_back(g.outcome_ids()[i]);
      ++degenerate_count;
    }
  }
  if (degenerate_count > 0) {
    return absl::FailedPreconditionError(absl::StrCat(
        "degenerate design: ", degenerate_count,
        " outcome unit(s) have exposure variance below ", kVarianceFloor, ": ",
        absl::StrJoin(degenerate, ", "),
        degenerate_count > degenerate.size() ? ", ..." : ""));
  }
  return moments;
}

absl::StatusOr<double> ExposureCovPair(const BipartiteGraph& g,
                                       const DesignSpec& d, size_t i,
                                       size_t j) {
  if (absl::Status s = CheckDesignMatchesGraph(g, d); !s.ok()) return s;
  if (i >= g.n_outcome() || j >= g.n_outcome()) {
    return absl::OutOfRangeError(absl::StrCat(
        "outcome index out of range: (", i, ", ", j, ")"));
  }
  std::vector<ClusterAggregatedWeights::Entry> row_i, row_j;
  AggregateRow(g, d.clustering(), i, row_i);
  AggregateRow(g, d.clustering(), j, row_j);
  return d.CoinVariance() * DotByCluster(row_i, row_j);
}

void WriteMomentsCsv(const ExposureMoments& moments, const BipartiteGraph& g,
                     std::ostream& out) {
  out << "outcome_id,mean,variance\n";
  for (size_t i = 0; i < moments.mean.size(); ++i) {
    out << absl::StrFormat("%s,%.17g,%.17g\n", g.outcome_ids()[i],
                           moments.mean[i], moments.variance[i]);
  }
}

}  // namespace expodesign
