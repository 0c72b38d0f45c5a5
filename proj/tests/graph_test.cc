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

#include "expodesign/graph.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include "expodesign/edge_list.h"
#include "expodesign/graph_snapshot.h"
#include "expodesign/rng.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace expodesign {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;

BipartiteGraph Parse(const std::string& text) {
  std::istringstream in(text);
  absl::StatusOr<BipartiteGraph> g = ParseEdgeList(in);
  EXPECT_TRUE(g.ok()) << g.status();
  return *g;
}

TEST(EdgeListTest, ReadsTriples) {
  const BipartiteGraph g = Parse("u1 i1 1.0\nu1 i2 1.0\nu2 i1 2.0\n");
  EXPECT_EQ(g.n_outcome(), 2);
  EXPECT_EQ(g.n_diversion(), 2);
  EXPECT_EQ(g.num_edges(), 3);
  EXPECT_THAT(g.outcome_ids(), ElementsAre("u1", "u2"));
  EXPECT_THAT(g.diversion_ids(), ElementsAre("i1", "i2"));
  EXPECT_DOUBLE_EQ(g.ColSum(0), 3.0);
}

TEST(EdgeListTest, SumsDuplicates) {
  const BipartiteGraph g = Parse("u1 i1 1.0\nu1 i1 1.0\n");
  ASSERT_EQ(g.num_edges(), 1);
  EXPECT_DOUBLE_EQ(g.Row(0)[0].weight, 2.0);
}

TEST(EdgeListTest, SkipsCommentsAndDropsZeroWeights) {
  const BipartiteGraph g = Parse("# header\n\nu1 i1 1.0  # trailing\nu1 i2 0\n");
  EXPECT_EQ(g.num_edges(), 1);
  // i2 has no positive edge left and is dropped.
  EXPECT_EQ(g.n_diversion(), 1);
}

TEST(EdgeListTest, NegativeWeightReportsLine) {
  std::istringstream in("u1 i1 1.0\nu2 i1 -1\n");
  absl::StatusOr<BipartiteGraph> g = ParseEdgeList(in);
  ASSERT_FALSE(g.ok());
  EXPECT_THAT(g.status().message(), HasSubstr("line 2"));
  EXPECT_THAT(g.status().message(), HasSubstr("NegativeWeight"));
}

TEST(EdgeListTest, MalformedLineReportsLine) {
  std::istringstream in("u1 i1 1.0\nu1 i2\n");
  absl::StatusOr<BipartiteGraph> g = ParseEdgeList(in);
  ASSERT_FALSE(g.ok());
  EXPECT_THAT(g.status().message(), HasSubstr("line 2"));

  std::istringstream bad_weight("u1 i1 heavy\n");
  g = ParseEdgeList(bad_weight);
  ASSERT_FALSE(g.ok());
  EXPECT_THAT(g.status().message(), HasSubstr("line 1"));
}

TEST(EdgeListTest, EmptyGraphIsAnError) {
  std::istringstream in("# nothing\n");
  EXPECT_EQ(ParseEdgeList(in).status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(GraphTest, RejectsOutOfRangeAndInvalidWeights) {
  EXPECT_EQ(BipartiteGraph::FromEdges(1, 1, {{0, 1, 1.0}}).status().code(),
            absl::StatusCode::kOutOfRange);
  EXPECT_FALSE(BipartiteGraph::FromEdges(1, 1, {{0, 0, -1.0}}).ok());
  EXPECT_FALSE(BipartiteGraph::FromEdges(1, 1, {{0, 0, NAN}}).ok());
}

TEST(GraphTest, NormalizeRows) {
  const BipartiteGraph raw = Parse("a x 1\na y 1\nb x 2\n");
  absl::StatusOr<BipartiteGraph> g = NormalizeRows(raw);
  ASSERT_TRUE(g.ok());
  EXPECT_TRUE(g->IsRowStochastic());
  EXPECT_DOUBLE_EQ(g->Row(0)[0].weight, 0.5);
  EXPECT_DOUBLE_EQ(g->Row(0)[1].weight, 0.5);
  EXPECT_DOUBLE_EQ(g->Row(1)[0].weight, 1.0);
  EXPECT_DOUBLE_EQ(g->ColSum(0), 1.5);
  EXPECT_DOUBLE_EQ(g->ColSum(1), 0.5);
  EXPECT_FALSE(raw.IsRowStochastic());
}

TEST(GraphTest, NormalizeRejectsEmptyRow) {
  const BipartiteGraph g = *BipartiteGraph::FromEdges(2, 1, {{0, 0, 1.0}});
  EXPECT_EQ(NormalizeRows(g).status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(GraphTest, FilterMinOutcomeDegree) {
  const BipartiteGraph g = Parse("a x 1\na y 1\na z 1\nb w 1\n");
  absl::StatusOr<BipartiteGraph> same = FilterMinOutcomeDegree(g, 0);
  ASSERT_TRUE(same.ok());
  EXPECT_EQ(same->Edges().size(), g.Edges().size());
  EXPECT_EQ(same->n_diversion(), 4);

  absl::StatusOr<BipartiteGraph> kept = FilterMinOutcomeDegree(g, 2);
  ASSERT_TRUE(kept.ok());
  EXPECT_THAT(kept->outcome_ids(), ElementsAre("a"));
  // w lost its only edge.
  EXPECT_THAT(kept->diversion_ids(), ElementsAre("x", "y", "z"));

  EXPECT_FALSE(FilterMinOutcomeDegree(g, 4).ok());
}

TEST(GraphTest, Exposures) {
  const BipartiteGraph g = testing::TwoByTwo();
  absl::StatusOr<ExposureVector> x =
      Exposures(g, *AssignmentVector::FromValues({1, -1}));
  ASSERT_TRUE(x.ok());
  EXPECT_THAT(*x, ElementsAre(0.0, 1.0));
  EXPECT_THAT(*Exposures(g, AssignmentVector(2, 1)), ElementsAre(1.0, 1.0));
  EXPECT_THAT(*Exposures(g, AssignmentVector(2, -1)), ElementsAre(-1.0, -1.0));
  EXPECT_FALSE(Exposures(g, AssignmentVector(3, 1)).ok());
  EXPECT_FALSE(AssignmentVector::FromValues({1, 0}).ok());
}

TEST(GraphTest, SimilarityAndCoweight) {
  const BipartiteGraph g = testing::TwoByTwo();
  EXPECT_DOUBLE_EQ(*OutcomeSimilarity(g, 0, 0), 0.5);
  EXPECT_DOUBLE_EQ(*OutcomeSimilarity(g, 0, 1), 0.5);
  EXPECT_DOUBLE_EQ(*DiversionCoweight(g, 0, 1), 0.25);
  EXPECT_DOUBLE_EQ(*DiversionCoweight(g, 0, 0), 1.25);
  EXPECT_EQ(OutcomeSimilarity(g, 0, 2).status().code(),
            absl::StatusCode::kOutOfRange);
  EXPECT_EQ(DiversionCoweight(g, 2, 0).status().code(),
            absl::StatusCode::kOutOfRange);

  const BipartiteGraph disjoint = testing::Identity(2);
  EXPECT_DOUBLE_EQ(*OutcomeSimilarity(disjoint, 0, 1), 0.0);
  EXPECT_DOUBLE_EQ(*DiversionCoweight(disjoint, 0, 1), 0.0);
}

TEST(GraphTest, AggregateOutcomeUnits) {
  const BipartiteGraph g = *NormalizeRows(Parse("a x 1\nb y 1\nc x 1\nc y 1\n"));
  const std::vector<uint32_t> groups = {0, 1, 0};
  absl::StatusOr<BipartiteGraph> agg = AggregateOutcomeUnits(g, groups);
  ASSERT_TRUE(agg.ok());
  EXPECT_THAT(agg->outcome_ids(), ElementsAre("group_0", "group_1"));
  EXPECT_TRUE(agg->IsRowStochastic());
  // Group 0 holds a (x: 1) and c (x: 0.5, y: 0.5).
  EXPECT_DOUBLE_EQ(agg->Row(0)[0].weight, 0.75);
  EXPECT_DOUBLE_EQ(agg->Row(0)[1].weight, 0.25);
}

// Structural invariants on random graphs: both views hold the same edges,
// column sums agree, normalization is idempotent, and the transpose swaps
// the roles of the two sides.
TEST(GraphPropertyTest, ViewsAgreeAndNormalizeIsIdempotent) {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const size_t n = 1 + rng.UniformIndex(8);
    const size_t m = 1 + rng.UniformIndex(12);
    const BipartiteGraph g = testing::RandomGraph(rng, n, m);
    ASSERT_TRUE(g.IsRowStochastic());

    std::vector<std::tuple<uint32_t, uint32_t, double>> by_row, by_col;
    for (size_t i = 0; i < n; ++i) {
      for (const auto& e : g.Row(i)) {
        EXPECT_GT(e.weight, 0.0);
        by_row.emplace_back(i, e.index, e.weight);
      }
    }
    for (size_t j = 0; j < m; ++j) {
      double sum = 0.0;
      for (const auto& e : g.Column(j)) {
        by_col.emplace_back(e.index, j, e.weight);
        sum += e.weight;
      }
      EXPECT_NEAR(g.ColSum(j), sum, 1e-12);
    }
    std::sort(by_col.begin(), by_col.end());
    EXPECT_EQ(by_row, by_col);

    const BipartiteGraph again = *NormalizeRows(g);
    const std::vector<Edge> a = g.Edges();
    const std::vector<Edge> b = again.Edges();
    ASSERT_EQ(a.size(), b.size());
    for (size_t e = 0; e < a.size(); ++e) {
      EXPECT_NEAR(a[e].weight, b[e].weight, 1e-15);
    }

    const BipartiteGraph t = g.Transposed();
    EXPECT_EQ(t.n_outcome(), m);
    EXPECT_EQ(t.n_diversion(), n);
    const size_t i = rng.UniformIndex(n);
    const size_t j = rng.UniformIndex(n);
    EXPECT_NEAR(*OutcomeSimilarity(g, i, j), *DiversionCoweight(t, i, j), 1e-15);
  }
}

TEST(SnapshotTest, RoundTripsExactly) {
  Rng rng(5);
  const BipartiteGraph g = testing::RandomGraph(rng, 7, 11);
  std::stringstream buffer;
  WriteGraphSnapshot(g, buffer);
  absl::StatusOr<BipartiteGraph> back = ReadGraphSnapshot(buffer);
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(back->outcome_ids(), g.outcome_ids());
  EXPECT_EQ(back->diversion_ids(), g.diversion_ids());
  const std::vector<Edge> a = g.Edges();
  const std::vector<Edge> b = back->Edges();
  ASSERT_EQ(a.size(), b.size());
  for (size_t e = 0; e < a.size(); ++e) {
    EXPECT_EQ(a[e].outcome, b[e].outcome);
    EXPECT_EQ(a[e].diversion, b[e].diversion);
    EXPECT_EQ(a[e].weight, b[e].weight);
  }
}

TEST(SnapshotTest, RejectsBadMagicAndTruncation) {
  std::stringstream junk("NOTAGRAPH-------------------------------");
  EXPECT_FALSE(ReadGraphSnapshot(junk).ok());

  std::stringstream buffer;
  WriteGraphSnapshot(testing::TwoByTwo(), buffer);
  const std::string bytes = buffer.str();
  std::stringstream truncated(bytes.substr(0, bytes.size() - 3));
  EXPECT_FALSE(ReadGraphSnapshot(truncated).ok());
}

TEST(EdgeListTest, WriteThenParseRoundTrips) {
  Rng rng(9);
  const BipartiteGraph g = testing::RandomGraph(rng, 5, 9);
  std::stringstream text;
  WriteEdgeList(g, text);
  absl::StatusOr<BipartiteGraph> back = ParseEdgeList(text);
  ASSERT_TRUE(back.ok());
  ASSERT_EQ(back->num_edges(), g.num_edges());
  // Ids are re-interned in order of appearance, so compare by id.
  for (size_t i = 0; i < g.n_outcome(); ++i) {
    for (const auto& e : g.Row(i)) {
      bool found = false;
      for (size_t bi = 0; bi < back->n_outcome(); ++bi) {
        if (back->outcome_ids()[bi] != g.outcome_ids()[i]) continue;
        for (const auto& be : back->Row(bi)) {
          if (back->diversion_ids()[be.index] == g.diversion_ids()[e.index]) {
            EXPECT_EQ(be.weight, e.weight);
            found = true;
          }
        }
      }
      EXPECT_TRUE(found);
    }
  }
}

}  // namespace
}  // namespace expodesign
