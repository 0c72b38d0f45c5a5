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

#include "expodesign/linkage.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace expodesign {

absl::StatusOr<std::vector<Merge>> CompleteLinkage(std::vector<double> distance,
                                                   size_t n) {
  if (distance.size() != n * n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "distance matrix has ", distance.size(), " entries, expected ", n * n));
  }
  std::vector<bool> active(n, true);
  std::vector<Merge> merges;
  merges.reserve(n > 0 ? n - 1 : 0);
  std::vector<uint32_t> chain;
  size_t remaining = n;
  auto d = [&](size_t i, size_t j) -> double& { return distance[i * n + j]; };
  while (remaining > 1) {
    if (chain.empty()) {
      for (uint32_t i = 0; i < n; ++i) {
        if (active[i]) {
          chain.push_back(i);
          break;
        }
      }
    }
    const uint32_t a = chain.back();
    const bool has_prev = chain.size() >= 2;
    const uint32_t prev = has_prev ? chain[chain.size() - 2] : 0;
    // Nearest active neighbor of a; the previous chain element wins ties so
    // the chain cannot cycle.
    uint32_t nearest = has_prev ? prev : std::numeric_limits<uint32_t>::max();
    double best = has_prev ? d(a, prev) : std::numeric_limits<double>::infinity();
    for (uint32_t x = 0; x < n; ++x) {
      if (!active[x] || x == a) continue;
      if (d(a, x) < best) {
        best = d(a, x);
        nearest = x;
      }
    }
    if (nearest == std::numeric_limits<uint32_t>::max()) {
      // Only reachable with NaN distances.
      return absl::InvalidArgumentError("distance matrix contains NaN");
    }
    if (!has_prev || nearest != prev) {
      chain.push_back(nearest);
      continue;
    }
    chain.pop_back();
    chain.pop_back();
    const uint32_t keep = std::min(a, prev);
    const uint32_t drop = std::max(a, prev);
    merges.push_back({keep, drop, best});
    active[drop] = false;
    for (uint32_t x = 0; x < n; ++x) {
      if (!active[x] || x == keep) continue;
      const double merged = std::max(d(keep, x), d(drop, x));
      d(keep, x) = merged;
      d(x, keep) = merged;
    }
    --remaining;
  }
  std::stable_sort(merges.begin(), merges.end(),
                   [](const Merge& x, const Merge& y) { return x.height < y.height; });
  return merges;
}

absl::StatusOr<std::vector<uint32_t>> FlattenToClusters(
    const std::vector<Merge>& merges, size_t n, size_t num_clusters) {
  if (num_clusters < 1 || num_clusters > n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "cannot flatten ", n, " points into ", num_clusters, " clusters"));
  }
  if (merges.size() + 1 != n) {
    return absl::InvalidArgumentError("merge list does not span all points");
  }
  std::vector<uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (size_t r = 0; r < n - num_clusters; ++r) {
    const uint32_t ra = find(merges[r].a);
    const uint32_t rb = find(merges[r].b);
    parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::unordered_map<uint32_t, uint32_t> dense;
  std::vector<uint32_t> labels(n);
  for (uint32_t i = 0; i < n; ++i) {
    auto [it, inserted] =
        dense.try_emplace(find(i), static_cast<uint32_t>(dense.size()));
    labels[i] = it->second;
  }
  return labels;
}

}  // namespace expodesign
