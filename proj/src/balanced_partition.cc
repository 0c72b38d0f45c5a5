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

#include "expodesign/balanced_partition.h"

#include <deque>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "expodesign/rng.h"

namespace expodesign {
namespace {

class LabelPropagation {
 public:
  LabelPropagation(const BipartiteGraph& g, size_t k)
      : g_(g), affinity_(k, 0.0), seen_(k, false) {}

  // Fills affinity_ with sum of c_{u,v} per label over v != u; returns the
  // labels touched.
  const std::vector<uint32_t>& Accumulate(uint32_t u,
                                          const std::vector<uint32_t>& label) {
    for (uint32_t l : touched_) {
      affinity_[l] = 0.0;
      seen_[l] = false;
    }
    touched_.clear();
    for (const BipartiteGraph::Entry& via : g_.Column(u)) {
      for (const BipartiteGraph::Entry& e : g_.Row(via.index)) {
        if (e.index == u) continue;
        const uint32_t l = label[e.index];
        if (!seen_[l]) {
          seen_[l] = true;
          touched_.push_back(l);
        }
        affinity_[l] += via.weight * e.weight;
      }
    }
    return touched_;
  }

  double Affinity(uint32_t l) const { return affinity_[l]; }

 private:
  const BipartiteGraph& g_;
  std::vector<double> affinity_;
  std::vector<bool> seen_;
  std::vector<uint32_t> touched_;
};

}  // namespace

absl::StatusOr<Clustering> BalancedPartition(const BipartiteGraph& g,
                                             size_t num_clusters, uint64_t seed,
                                             size_t passes) {
  const size_t m = g.n_diversion();
  if (num_clusters < 1) return absl::InvalidArgumentError("cluster count must be >= 1");
  if (num_clusters > m) {
    return absl::InvalidArgumentError(absl::StrCat(
        "cluster count ", num_clusters, " exceeds ", m, " diversion units"));
  }
  const size_t capacity = (m + num_clusters - 1) / num_clusters;
  Rng rng(seed);
  std::vector<uint32_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  rng.Shuffle(std::span<uint32_t>(order));
  std::vector<uint32_t> label(m);
  std::vector<size_t> size(num_clusters, 0);
  for (size_t r = 0; r < m; ++r) {
    label[order[r]] = static_cast<uint32_t>(r % num_clusters);
    ++size[r % num_clusters];
  }

  LabelPropagation lp(g, num_clusters);
  struct Request {
    uint32_t unit;
    double gain;
  };
  for (size_t pass = 0; pass < passes; ++pass) {
    rng.Shuffle(std::span<uint32_t>(order));
    // Pending requests keyed by (from, to).
    std::unordered_map<uint64_t, std::deque<Request>> pending;
    auto key = [](uint32_t from, uint32_t to) {
      return (uint64_t{from} << 32) | to;
    };
    size_t moved = 0;
    for (uint32_t u : order) {
      const uint32_t current = label[u];
      const std::vector<uint32_t>& touched = lp.Accumulate(u, label);
      uint32_t best = current;
      double best_affinity = lp.Affinity(current);
      for (uint32_t l : touched) {
        const double a = lp.Affinity(l);
        if (a > best_affinity) {
          best = l;
          best_affinity = a;
        }
      }
      const double gain = best_affinity - lp.Affinity(current);
      if (best == current || !(gain > 0.0)) continue;
      if (size[best] < capacity) {
        --size[current];
        ++size[best];
        label[u] = best;
        ++moved;
        continue;
      }
      bool swapped = false;
      std::deque<Request>& partners = pending[key(best, current)];
      while (!partners.empty()) {
        const Request v = partners.front();
        partners.pop_front();
        if (label[v.unit] != best) continue;
        // Swap gain, less the u-v coweight counted on both sides.
        double coweight = 0.0;
        for (const BipartiteGraph::Entry& via : g.Column(u)) {
          for (const BipartiteGraph::Entry& e : g.Row(via.index)) {
            if (e.index == v.unit) coweight += via.weight * e.weight;
          }
        }
        if (gain + v.gain - 2.0 * coweight > 0.0) {
          label[u] = best;
          label[v.unit] = current;
          moved += 2;
          swapped = true;
          break;
        }
      }
      if (!swapped) pending[key(current, best)].push_back({u, gain});
    }
    if (moved == 0) break;
  }
  return Clustering::FromLabels(label);
}

absl::StatusOr<BipartiteGraph> GroupOutcomeUnits(const BipartiteGraph& g,
                                                 size_t num_groups,
                                                 uint64_t seed) {
  absl::StatusOr<Clustering> groups =
      BalancedPartition(g.Transposed(), num_groups, seed);
  if (!groups.ok()) return groups.status();
  return AggregateOutcomeUnits(g, groups->assignment());
}

}  // namespace expodesign
