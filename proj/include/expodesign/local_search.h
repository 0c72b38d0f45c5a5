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

#ifndef EXPODESIGN_LOCAL_SEARCH_H_
#define EXPODESIGN_LOCAL_SEARCH_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "expodesign/clustering.h"
#include "expodesign/graph.h"
#include "expodesign/objective.h"
#include "expodesign/rng.h"

namespace expodesign {

inline constexpr size_t kUnlimitedClusterSize =
    std::numeric_limits<size_t>::max();

struct LocalSearchConfig {
  double phi = 1.0;
  // Treatment probability; scales the objective by 4p(1-p) but does not
  // change which moves are accepted.
  double p = 0.5;
  size_t k_max = kUnlimitedClusterSize;
  size_t max_passes = 0;            // 0: no pass limit
  // <= 0: no time limit. Checked after each pass, so a run stops at a pass
  // boundary and can be repeated exactly with max_passes.
  double time_budget_seconds = 0.0;
  bool stop_on_convergence = true;   // stop after a pass with no accepted move
  uint64_t seed = 0;
  // Moves are accepted only when they improve the objective by more than this.
  double accept_eps = 1e-12;

  absl::Status Validate() const;
};

struct PassTrace {
  size_t pass = 0;
  size_t moves_accepted = 0;
  ObjectiveValue objective;
  double elapsed_seconds = 0.0;
};

struct LocalSearchResult {
  Clustering clustering;
  ObjectiveValue objective;
  std::vector<PassTrace> trace;  // entry 0 is the singleton start
  size_t restart = 0;
  // Completed passes of every restart that was run.
  std::vector<size_t> passes_by_restart;
};

// Draws j with probability c_{i,j} / s_i by a two-hop walk: an outcome unit
// k with probability w_{k,i} / s_i, then j with probability w_{k,j}.
class WedgeSampler {
 public:
  explicit WedgeSampler(const BipartiteGraph& g);

  // FailedPrecondition when column i is empty.
  absl::StatusOr<uint32_t> Sample(uint32_t i, Rng& rng) const;
  uint32_t SampleUnchecked(uint32_t i, Rng& rng) const;

 private:
  const BipartiteGraph* graph_;
  std::vector<double> col_prefix_;  // running sums aligned with Column(j)
  std::vector<size_t> col_offsets_;
  std::vector<double> row_prefix_;  // running sums aligned with Row(k)
  std::vector<size_t> row_offsets_;
};

// One-shot helper; builds a sampler for a single draw.
absl::StatusOr<uint32_t> WedgeSample(const BipartiteGraph& g, uint32_t i,
                                     Rng& rng);

enum class MoveStatus { kOk, kSameCluster, kAtCapacity };

struct MoveDelta {
  MoveStatus status = MoveStatus::kOk;
  double delta = 0.0;
};

// Mutable search state: the current clustering plus, per cluster, the
// aggregates Wc[., C] keyed by outcome unit and the total S_C. Cluster ids
// are the initial singleton ids and stay fixed while searching; emptied
// clusters keep their slot.
class LocalSearchState {
 public:
  LocalSearchState(const BipartiteGraph& g, double phi, double p,
                   size_t k_max);
  LocalSearchState(const BipartiteGraph& g, double phi, double p,
                   size_t k_max, const Clustering& initial);

  // Change in ObjectiveValue::total from moving unit i into `target`:
  //   2 v [sum_{j in B} omega_{i,j} - sum_{j in A \ {i}} omega_{i,j}],
  // at a cost proportional to the degree of i.
  MoveDelta EvaluateMove(uint32_t i, uint32_t target) const;
  void ApplyMove(uint32_t i, uint32_t target);

  uint32_t ClusterOf(uint32_t i) const { return cluster_of_[i]; }
  size_t ClusterSize(uint32_t c) const { return clusters_[c].size; }
  size_t num_slots() const { return clusters_.size(); }

  // Recomputed from the aggregates.
  ObjectiveValue Objective() const;
  // Dense ids in order of first appearance.
  Clustering ToClustering() const;

 private:
  struct AggEntry {
    uint32_t outcome;
    uint32_t count;  // contributing members; the entry is erased at zero
    double value;
  };
  struct ClusterAgg {
    std::vector<AggEntry> entries;  // sorted by outcome
    double total = 0.0;
    size_t size = 0;
  };

  double DotWithColumn(uint32_t i, const ClusterAgg& cluster) const;
  void Insert(uint32_t i, ClusterAgg& cluster);
  void Remove(uint32_t i, ClusterAgg& cluster);

  const BipartiteGraph* graph_;
  double phi_;
  double coin_variance_;
  size_t k_max_;
  std::vector<uint32_t> cluster_of_;
  std::vector<ClusterAgg> clusters_;
};

// Starts from all singletons and runs passes over the diversion units in a
// fresh random order. Each unit draws a partner by wedge sampling and moves
// into the partner's cluster when that improves the objective by more than
// accept_eps without exceeding k_max.
absl::StatusOr<LocalSearchResult> LocalSearch(const BipartiteGraph& g,
                                              const LocalSearchConfig& config);

// Runs `restarts` searches and keeps the best objective (lowest restart index
// on ties). Restart 0 uses config.seed, restart r > 0 DeriveSeed(config.seed,
// r). A non-empty `pass_limits` replaces max_passes and the time budget of
// each restart, which repeats a time-limited run exactly.
absl::StatusOr<LocalSearchResult> LocalSearchWithRestarts(
    const BipartiteGraph& g, const LocalSearchConfig& config, size_t restarts,
    size_t threads = 1, std::span<const size_t> pass_limits = {});

}  // namespace expodesign

#endif  // EXPODESIGN_LOCAL_SEARCH_H_
