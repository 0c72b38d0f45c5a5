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

#include "expodesign/synthetic.h"

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "expodesign/rng.h"

namespace expodesign {

std::vector<uint32_t> PlantedDiversionBlocks(const PlantedBlockConfig& config) {
  std::vector<uint32_t> block(config.n_diversion);
  const size_t per_block = config.n_diversion / config.blocks;
  for (size_t j = 0; j < block.size(); ++j) {
    block[j] = static_cast<uint32_t>(j / per_block);
  }
  return block;
}

absl::StatusOr<BipartiteGraph> PlantedBlockGraph(const PlantedBlockConfig& config) {
  if (config.blocks < 1 || config.n_outcome % config.blocks != 0 ||
      config.n_diversion % config.blocks != 0) {
    return absl::InvalidArgumentError(
        "blocks must divide both the outcome and the diversion count");
  }
  const size_t div_per_block = config.n_diversion / config.blocks;
  const size_t out_per_block = config.n_outcome / config.blocks;
  if (config.degree < 1 || config.degree > div_per_block) {
    return absl::InvalidArgumentError(
        absl::StrCat("degree must be in [1, ", div_per_block, "]"));
  }
  if (!(config.cross_block >= 0.0 && config.cross_block <= 1.0)) {
    return absl::InvalidArgumentError("cross_block must be in [0, 1]");
  }
  if (config.blocks == 1 && config.cross_block > 0.0) {
    return absl::InvalidArgumentError("cross_block needs at least two blocks");
  }
  Rng rng(config.seed);
  std::vector<Edge> edges;
  edges.reserve(config.n_outcome * config.degree);
  std::vector<uint32_t> row;
  for (size_t i = 0; i < config.n_outcome; ++i) {
    const size_t home = i / out_per_block;
    row.clear();
    while (row.size() < config.degree) {
      size_t block = home;
      if (rng.Bernoulli(config.cross_block)) {
        block = rng.UniformIndex(config.blocks - 1);
        if (block >= home) ++block;
      }
      const uint32_t j =
          static_cast<uint32_t>(block * div_per_block + rng.UniformIndex(div_per_block));
      if (std::find(row.begin(), row.end(), j) != row.end()) continue;
      row.push_back(j);
      edges.push_back({static_cast<uint32_t>(i), j, 0.5 + rng.Uniform01()});
    }
  }
  absl::StatusOr<BipartiteGraph> g =
      BipartiteGraph::FromEdges(config.n_outcome, config.n_diversion, std::move(edges));
  if (!g.ok()) return g.status();
  return NormalizeRows(DropIsolatedDiversionUnits(*g));
}

absl::StatusOr<BipartiteGraph> RandomSparseGraph(size_t n_outcome,
                                                 size_t n_diversion, size_t nnz,
                                                 uint64_t seed) {
  if (n_outcome < 1 || n_diversion < 1) {
    return absl::InvalidArgumentError("empty graph");
  }
  Rng rng(seed);
  std::vector<Edge> edges;
  edges.reserve(nnz + n_outcome);
  for (size_t j = 0; j < n_diversion; ++j) {
    edges.push_back({static_cast<uint32_t>(rng.UniformIndex(n_outcome)),
                     static_cast<uint32_t>(j), 0.5 + rng.Uniform01()});
  }
  std::vector<bool> covered(n_outcome, false);
  for (const Edge& e : edges) covered[e.outcome] = true;
  for (size_t i = 0; i < n_outcome; ++i) {
    if (covered[i]) continue;
    edges.push_back({static_cast<uint32_t>(i),
                     static_cast<uint32_t>(rng.UniformIndex(n_diversion)),
                     0.5 + rng.Uniform01()});
  }
  while (edges.size() < nnz) {
    edges.push_back({static_cast<uint32_t>(rng.UniformIndex(n_outcome)),
                     static_cast<uint32_t>(rng.UniformIndex(n_diversion)),
                     0.5 + rng.Uniform01()});
  }
  absl::StatusOr<BipartiteGraph> g =
      BipartiteGraph::FromEdges(n_outcome, n_diversion, std::move(edges));
  if (!g.ok()) return g.status();
  return NormalizeRows(*g);
}

}  // namespace expodesign
