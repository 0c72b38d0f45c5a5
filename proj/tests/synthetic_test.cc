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

#include "gtest/gtest.h"

namespace expodesign {
namespace {

TEST(PlantedBlockGraphTest, EdgesStayInBlockWithoutNoise) {
  PlantedBlockConfig config;
  config.n_outcome = 40;
  config.n_diversion = 100;
  config.blocks = 5;
  config.degree = 6;
  config.seed = 1;
  const BipartiteGraph g = *PlantedBlockGraph(config);
  EXPECT_TRUE(g.IsRowStochastic());
  EXPECT_EQ(g.n_outcome(), 40u);
  for (size_t i = 0; i < 40; ++i) {
    EXPECT_EQ(g.OutcomeDegree(i), 6u);
  }
  // Diversion ids survive isolated-unit removal; blocks are read from them.
  const std::vector<uint32_t> blocks = PlantedDiversionBlocks(config);
  for (size_t i = 0; i < 40; ++i) {
    for (const auto& e : g.Row(i)) {
      const uint32_t original =
          static_cast<uint32_t>(std::stoul(g.diversion_ids()[e.index]));
      EXPECT_EQ(blocks[original], i / 8);
    }
  }
}

TEST(PlantedBlockGraphTest, ValidatesConfig) {
  PlantedBlockConfig config;
  config.blocks = 7;
  EXPECT_FALSE(PlantedBlockGraph(config).ok());
  config = PlantedBlockConfig();
  config.degree = 1000;
  EXPECT_FALSE(PlantedBlockGraph(config).ok());
  config = PlantedBlockConfig();
  config.cross_block = 1.5;
  EXPECT_FALSE(PlantedBlockGraph(config).ok());
}

TEST(PlantedBlockGraphTest, Deterministic) {
  PlantedBlockConfig config;
  config.cross_block = 0.1;
  config.seed = 4;
  const std::vector<Edge> a = PlantedBlockGraph(config)->Edges();
  const std::vector<Edge> b = PlantedBlockGraph(config)->Edges();
  ASSERT_EQ(a.size(), b.size());
  for (size_t e = 0; e < a.size(); ++e) EXPECT_EQ(a[e].weight, b[e].weight);
}

TEST(RandomSparseGraphTest, CoversEveryUnit) {
  const BipartiteGraph g = *RandomSparseGraph(50, 300, 1000, 7);
  EXPECT_TRUE(g.IsRowStochastic());
  EXPECT_EQ(g.n_outcome(), 50u);
  EXPECT_EQ(g.n_diversion(), 300u);
  EXPECT_GT(g.num_edges(), 900u);
  EXPECT_LE(g.num_edges(), 1000u);
  for (size_t j = 0; j < 300; ++j) EXPECT_GE(g.DiversionDegree(j), 1u);
  for (size_t i = 0; i < 50; ++i) EXPECT_GE(g.OutcomeDegree(i), 1u);
  EXPECT_FALSE(RandomSparseGraph(0, 3, 3, 1).ok());
}

}  // namespace
}  // namespace expodesign
