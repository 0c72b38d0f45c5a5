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

#ifndef EXPODESIGN_SYNTHETIC_H_
#define EXPODESIGN_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "expodesign/graph.h"

namespace expodesign {

// Outcome and diversion units are split into `blocks` contiguous blocks of
// equal size. Each outcome unit draws `degree` distinct diversion units: from
// its own block, or with probability `cross_block` from another block. Raw
// weights are uniform on [0.5, 1.5); rows are normalized.
struct PlantedBlockConfig {
  size_t n_outcome = 200;
  size_t n_diversion = 2000;
  size_t blocks = 10;
  size_t degree = 10;
  double cross_block = 0.0;
  uint64_t seed = 0;
};

absl::StatusOr<BipartiteGraph> PlantedBlockGraph(const PlantedBlockConfig& config);

// Block id of each diversion unit under PlantedBlockGraph's layout.
std::vector<uint32_t> PlantedDiversionBlocks(const PlantedBlockConfig& config);

// Row-stochastic graph with about `nnz` edges. Every outcome and diversion
// unit gets at least one edge; the rest are uniform (i, j) pairs. Duplicate
// pairs are merged, so the final count can fall slightly short of `nnz`.
absl::StatusOr<BipartiteGraph> RandomSparseGraph(size_t n_outcome,
                                                 size_t n_diversion, size_t nnz,
                                                 uint64_t seed);

}  // namespace expodesign

#endif  // EXPODESIGN_SYNTHETIC_H_
