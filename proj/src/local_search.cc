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

#include "expodesign/local_search.h"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "expodesign/parallel.h"

namespace expodesign {

absl::Status LocalSearchConfig::Validate() const {
  if (!(phi >= 0.0)) {
    return absl::InvalidArgumentError(absl::StrCat("phi must be >= 0, got ", phi));
  }
  if (!(p > 0.0 && p < 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat("p must lie in (0, 1), got ", p));
  }
  if (k_max < 1) return absl::InvalidArgumentError("k_max must be >= 1");
  if (max_passes == 0 && time_budget_seconds <= 0.0 && !stop_on_convergence) {
    return absl::InvalidArgumentError(
        "local search needs a pass limit, a time budget or convergence stopping");
  }
  return absl::OkStatus();
}

WedgeSampler::WedgeSampler(const BipartiteGraph& g) : graph_(&g) {
  col_offsets_.assign(g.n_diversion() + 1, 0);
  col_prefix_.reserve(g.num_edges());
  for (size_t j = 0; j < g.n_diversion(); ++j) {
    double running = 0.0;
    for (const BipartiteGraph::Entry& e : g.Column(j)) {
      running += e.weight;
      col_prefix_.push_back(running);
    }
    col_offsets_[j + 1] = col_prefix_.size();
  }
  row_offsets_.assign(g.n_outcome() + 1, 0);
  row_prefix_.reserve(g.num_edges());
  for (size_t k = 0; k < g.n_outcome(); ++k) {
    double running = 0.0;
    for (const BipartiteGraph::Entry& e : g.Row(k)) {
      running += e.weight;
      row_prefix_.push_back(running);
    }
    row_offsets_[k + 1] = row_prefix_.size();
  }
}

namespace {

// Index of the first prefix entry exceeding u * total.
size_t PickByPrefix(const double* begin, const double* end, Rng& rng) {
  const double target = rng.Uniform01() * *(end - 1);
  const double* it = std::upper_bound(begin, end, target);
  return static_cast<size_t>(std::min(it, end - 1) - begin);
}

}  // namespace

uint32_t WedgeSampler::SampleUnchecked(uint32_t i, Rng& rng) const {
  const double* col = col_prefix_.data();
  const size_t pick_k =
      PickByPrefix(col + col_offsets_[i], col + col_offsets_[i + 1], rng);
  const uint32_t k = graph_->Column(i)[pick_k].index;
  const double* row = row_prefix_.data();
  const size_t pick_j =
      PickByPrefix(row + row_offsets_[k], row + row_offsets_[k + 1], rng);
  return graph_->Row(k)[pick_j].index;
}

absl::StatusOr<uint32_t> WedgeSampler::Sample(uint32_t i, Rng& rng) const {
  if (i >= graph_->n_diversion()) {
    return absl::OutOfRangeError(absl::StrCat("diversion index ", i, " out of range"));
  }
  if (graph_->DiversionDegree(i) == 0) {
    return absl::FailedPreconditionError(
        absl::StrCat("diversion unit ", i, " has no incident edges"));
  }
  return SampleUnchecked(i, rng);
}

absl::StatusOr<uint32_t> WedgeSample(const BipartiteGraph& g, uint32_t i,
                                     Rng& rng) {
  return WedgeSampler(g).Sample(i, rng);
}

LocalSearchState::LocalSearchState(const BipartiteGraph& g, double phi,
                                   double p, size_t k_max)
    : LocalSearchState(g, phi, p, k_max, Clustering::Singletons(g.n_diversion())) {}

LocalSearchState::LocalSearchState(const BipartiteGraph& g, double phi,
                                   double p, size_t k_max,
                                   const Clustering& initial)
    : graph_(&g),
      phi_(phi),
      coin_variance_(4.0 * p * (1.0 - p)),
      k_max_(k_max),
      cluster_of_(initial.assignment().begin(), initial.assignment().end()),
      clusters_(std::max(initial.num_clusters(), g.n_diversion())) {
  for (uint32_t j = 0; j < g.n_diversion(); ++j) Insert(j, clusters_[cluster_of_[j]]);
}

double LocalSearchState::DotWithColumn(uint32_t i,
                                       const ClusterAgg& cluster) const {
  double sum = 0.0;
  auto first = cluster.entries.begin();
  const auto last = cluster.entries.end();
  for (const BipartiteGraph::Entry& e : graph_->Column(i)) {
    first = std::lower_bound(
        first, last, e.index,
        [](const AggEntry& a, uint32_t k) { return a.outcome < k; });
    if (first == last) break;
    if (first->outcome == e.index) sum += e.weight * first->value;
  }
  return sum;
}

void LocalSearchState::Insert(uint32_t i, ClusterAgg& cluster) {
  auto& entries = cluster.entries;
  auto it = entries.begin();
  for (const BipartiteGraph::Entry& e : graph_->Column(i)) {
    it = std::lower_bound(
        it, entries.end(), e.index,
        [](const AggEntry& a, uint32_t k) { return a.outcome < k; });
    if (it != entries.end() && it->outcome == e.index) {
      ++it->count;
      it->value += e.weight;
    } else {
      it = entries.insert(it, AggEntry{e.index, 1, e.weight});
    }
    ++it;
  }
  cluster.total += graph_->ColSum(i);
  ++cluster.size;
}

void LocalSearchState::Remove(uint32_t i, ClusterAgg& cluster) {
  auto& entries = cluster.entries;
  auto it = entries.begin();
  for (const BipartiteGraph::Entry& e : graph_->Column(i)) {
    it = std::lower_bound(
        it, entries.end(), e.index,
        [](const AggEntry& a, uint32_t k) { return a.outcome < k; });
    if (--it->count == 0) {
      it = entries.erase(it);
    } else {
      it->value -= e.weight;
      ++it;
    }
  }
  if (--cluster.size == 0) {
    cluster.total = 0.0;
  } else {
    cluster.total -= graph_->ColSum(i);
  }
}

MoveDelta LocalSearchState::EvaluateMove(uint32_t i, uint32_t target) const {
  const uint32_t source = cluster_of_[i];
  if (source == target) return {MoveStatus::kSameCluster, 0.0};
  const ClusterAgg& to = clusters_[target];
  if (to.size >= k_max_) return {MoveStatus::kAtCapacity, 0.0};
  const ClusterAgg& from = clusters_[source];
  const double s_i = graph_->ColSum(i);
  double self = 0.0;
  for (const BipartiteGraph::Entry& e : graph_->Column(i)) self += e.weight * e.weight;
  const double gain_to =
      (1.0 + phi_) * DotWithColumn(i, to) - phi_ * s_i * to.total;
  const double gain_from = (1.0 + phi_) * (DotWithColumn(i, from) - self) -
                           phi_ * s_i * (from.total - s_i);
  return {MoveStatus::kOk, 2.0 * coin_variance_ * (gain_to - gain_from)};
}

void LocalSearchState::ApplyMove(uint32_t i, uint32_t target) {
  const uint32_t source = cluster_of_[i];
  if (source == target) return;
  Remove(i, clusters_[source]);
  Insert(i, clusters_[target]);
  cluster_of_[i] = target;
}

ObjectiveValue LocalSearchState::Objective() const {
  double squared = 0.0;
  double totals_squared = 0.0;
  for (const ClusterAgg& cluster : clusters_) {
    for (const AggEntry& e : cluster.entries) squared += e.value * e.value;
    totals_squared += cluster.total * cluster.total;
  }
  return MakeObjectiveValue(coin_variance_ * squared,
                            coin_variance_ * (totals_squared - squared), phi_);
}

Clustering LocalSearchState::ToClustering() const {
  return Clustering::FromLabels(cluster_of_);
}

absl::StatusOr<LocalSearchResult> LocalSearch(const BipartiteGraph& g,
                                              const LocalSearchConfig& config) {
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  if (!g.IsRowStochastic()) {
    return absl::FailedPreconditionError("local search needs a row-normalized graph");
  }
  using Clock = std::chrono::steady_clock;
  const Clock::time_point start = Clock::now();
  auto elapsed = [&start] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };
  const bool timed = config.time_budget_seconds > 0.0;

  const size_t m = g.n_diversion();
  LocalSearchState state(g, config.phi, config.p, config.k_max);
  const WedgeSampler sampler(g);
  Rng rng(config.seed);
  std::vector<uint32_t> order(m);
  std::iota(order.begin(), order.end(), 0);

  LocalSearchResult result;
  result.trace.push_back({0, 0, state.Objective(), elapsed()});
  for (size_t pass = 1; config.max_passes == 0 || pass <= config.max_passes;
       ++pass) {
    rng.Shuffle(std::span<uint32_t>(order));
    size_t accepted = 0;
    for (size_t step = 0; step < m; ++step) {
      const uint32_t i = order[step];
      if (g.DiversionDegree(i) == 0) continue;
      const uint32_t partner = sampler.SampleUnchecked(i, rng);
      const uint32_t target = state.ClusterOf(partner);
      const MoveDelta move = state.EvaluateMove(i, target);
      if (move.status == MoveStatus::kOk && move.delta > config.accept_eps) {
        state.ApplyMove(i, target);
        ++accepted;
      }
    }
    result.trace.push_back({pass, accepted, state.Objective(), elapsed()});
    if (timed && elapsed() > config.time_budget_seconds) break;
    if (config.stop_on_convergence && accepted == 0) break;
  }
  result.clustering = state.ToClustering();
  result.objective = result.trace.back().objective;
  result.passes_by_restart = {result.trace.size() - 1};
  return result;
}

absl::StatusOr<LocalSearchResult> LocalSearchWithRestarts(
    const BipartiteGraph& g, const LocalSearchConfig& config, size_t restarts,
    size_t threads, std::span<const size_t> pass_limits) {
  if (restarts == 0) return absl::InvalidArgumentError("restarts must be >= 1");
  if (!pass_limits.empty() && pass_limits.size() != restarts) {
    return absl::InvalidArgumentError(absl::StrCat(
        pass_limits.size(), " pass limits for ", restarts, " restarts"));
  }
  std::vector<absl::StatusOr<LocalSearchResult>> runs(restarts);
  ParallelFor(restarts, threads, [&](size_t r) {
    LocalSearchConfig run_config = config;
    if (r > 0) run_config.seed = DeriveSeed(config.seed, r);
    if (!pass_limits.empty()) {
      run_config.max_passes = pass_limits[r];
      run_config.time_budget_seconds = 0.0;
    }
    runs[r] = LocalSearch(g, run_config);
    if (runs[r].ok()) runs[r]->restart = r;
  });
  size_t best = 0;
  std::vector<size_t> passes(restarts);
  for (size_t r = 0; r < restarts; ++r) {
    if (!runs[r].ok()) return runs[r].status();
    passes[r] = runs[r]->trace.size() - 1;
    if (runs[r]->objective.total > runs[best]->objective.total) best = r;
  }
  LocalSearchResult result = *std::move(runs[best]);
  result.passes_by_restart = std::move(passes);
  return result;
}

}  // namespace expodesign
