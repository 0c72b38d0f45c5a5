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

#ifndef EXPODESIGN_LINKAGE_H_
#define EXPODESIGN_LINKAGE_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"

namespace expodesign {

struct Merge {
  uint32_t a;  // representative slots of the merged clusters
  uint32_t b;
  double height;
};

// Complete-linkage agglomerative clustering of n points from a dense,
// symmetric n x n distance matrix (row-major), by the nearest-neighbor chain
// algorithm in O(n^2) time. Merges are returned in non-decreasing height
// (stable with respect to discovery order).
absl::StatusOr<std::vector<Merge>> CompleteLinkage(std::vector<double> distance,
                                                   size_t n);

// Cuts the hierarchy into exactly `num_clusters` flat clusters by applying
// the n - num_clusters lowest merges. Labels are dense, by first appearance.
absl::StatusOr<std::vector<uint32_t>> FlattenToClusters(
    const std::vector<Merge>& merges, size_t n, size_t num_clusters);

}  // namespace expodesign

#endif  // EXPODESIGN_LINKAGE_H_
