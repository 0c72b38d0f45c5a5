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

#ifndef EXPODESIGN_BALANCED_PARTITION_H_
#define EXPODESIGN_BALANCED_PARTITION_H_

#include <cstddef>
#include <cstdint>

#include "absl/status/statusor.h"
#include "expodesign/clustering.h"
#include "expodesign/graph.h"

namespace expodesign {

// Size-constrained label propagation over the diversion co-weight graph
// (affinity c_{u,v} = sum_k w_{k,u} w_{k,v}). Labels start round-robin over a
// seeded random order; each pass visits units in a fresh random order and
// moves a unit to the label of highest affinity gain. A move into a label
// already at capacity ceil(m/k) is realized as a swap with a unit of that
// label which asked to move the other way in the same pass, when the swap
// gain is positive. Deterministic given the seed.
//
// This is a lightweight stand-in for a distributed balanced partitioner, not
// a reimplementation of one.
absl::StatusOr<Clustering> BalancedPartition(const BipartiteGraph& g,
                                             size_t num_clusters, uint64_t seed,
                                             size_t passes = 10);

// Groups outcome units into `num_groups` balanced groups (label propagation
// on outcome similarity), then sums the rows of each group and renormalizes.
absl::StatusOr<BipartiteGraph> GroupOutcomeUnits(const BipartiteGraph& g,
                                                 size_t num_groups,
                                                 uint64_t seed);

}  // namespace expodesign

#endif  // EXPODESIGN_BALANCED_PARTITION_H_
