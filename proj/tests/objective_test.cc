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

#include "expodesign/objective.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "expodesign/rng.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace expodesign {
namespace {

TEST(OmegaTest, TwoByTwo) {
  const BipartiteGraph g = testing::TwoByTwo();
  EXPECT_DOUBLE_EQ(*Omega(g, 1.0, 0, 0), 0.25);
  EXPECT_DOUBLE_EQ(*Omega(g, 1.0, 1, 1), 0.25);
  EXPECT_DOUBLE_EQ(*Omega(g, 1.0, 0, 1), -0.25);
  EXPECT_DOUBLE_EQ(*Omega(g, 0.0, 0, 1), 0.25);
  EXPECT_FALSE(Omega(g, 1.0, 0, 2).ok());
}

TEST(ObjectiveTest, TwoByTwoValues) {
  const BipartiteGraph g = testing::TwoByTwo();
  const ObjectiveValue singles =
      *Objective(g, Clustering::Singletons(2), 1.0, 0.5);
  EXPECT_DOUBLE_EQ(singles.total, 0.5);
  EXPECT_DOUBLE_EQ(singles.variance_sum, 1.5);
  EXPECT_DOUBLE_EQ(singles.covariance_sum, 1.0);
  const ObjectiveValue one = *Objective(g, Clustering::OneCluster(2), 1.0, 0.5);
  EXPECT_DOUBLE_EQ(one.total, 0.0);
  EXPECT_DOUBLE_EQ(*CorrClustTotal(g, Clustering::Singletons(2), 1.0), 0.5);
  EXPECT_DOUBLE_EQ(*CorrClustTotal(g, Clustering::OneCluster(2), 1.0), 0.0);
  EXPECT_FALSE(Objective(g, Clustering::OneCluster(3), 1.0, 0.5).ok());
}

TEST(ObjectiveTest, ThreeRoutesAgree) {
  Rng rng(31);
  const double ps[] = {0.3, 0.5, 0.7};
  const double phis[] = {0.0, 0.2, 1.0, 3.0};
  for (int trial = 0; trial < 150; ++trial) {
    const size_t n = 1 + rng.UniformIndex(6);
    const size_t m = 1 + rng.UniformIndex(12);
    const BipartiteGraph g = testing::RandomGraph(rng, n, m);
    const Clustering c = testing::RandomClustering(rng, m, 12);
    const double p = ps[trial % 3];
    const double phi = phis[trial % 4];
    const double v = 4 * p * (1 - p);
    const ObjectiveValue agg = *Objective(g, c, phi, p);
    const ObjectiveValue enumerated = *ObjectiveFromEnumeration(g, c, phi, p);
    const double corr = v * *CorrClustTotal(g, c, phi);
    EXPECT_NEAR(agg.total, enumerated.total, 1e-9);
    EXPECT_NEAR(agg.variance_sum, enumerated.variance_sum, 1e-9);
    EXPECT_NEAR(agg.covariance_sum, enumerated.covariance_sum, 1e-9);
    EXPECT_NEAR(agg.total, corr, 1e-9);
  }
}

TEST(SpreadTest, OneClusterHasNoSpreadAndSutvaHasNMinusOne) {
  Rng rng(4);
  const BipartiteGraph g = testing::RandomGraph(rng, 5, 8);
  for (SpreadRoute route : {SpreadRoute::kClosedForm, SpreadRoute::kEnumeration}) {
    EXPECT_NEAR(*ExposureSpreadObjective(g, Clustering::OneCluster(8), 0.5,
                                         route),
                0.0, 1e-12);
    EXPECT_NEAR(*ExposureSpreadObjective(testing::Identity(6),
                                         Clustering::Singletons(6), 0.5, route),
                5.0, 1e-12);
  }
}

TEST(SpreadTest, AffineInObjective) {
  Rng rng(77);
  const double ps[] = {0.3, 0.5, 0.7};
  for (int trial = 0; trial < 150; ++trial) {
    const size_t n = 2 + rng.UniformIndex(5);
    const size_t m = 1 + rng.UniformIndex(12);
    const BipartiteGraph g = testing::RandomGraph(rng, n, m);
    const Clustering c = testing::RandomClustering(rng, m, 12);
    const double p = ps[trial % 3];
    const double phi = 1.0 / static_cast<double>(n - 1);
    const double scale = static_cast<double>(n - 1) / static_cast<double>(n);
    const double offset = ExposureSpreadOffset(g, p);
    const double closed =
        *ExposureSpreadObjective(g, c, p, SpreadRoute::kClosedForm);
    const double enumerated =
        *ExposureSpreadObjective(g, c, p, SpreadRoute::kEnumeration);
    EXPECT_NEAR(closed, enumerated, 1e-9);
    EXPECT_NEAR(closed, scale * Objective(g, c, phi, p)->total + offset, 1e-9);
    // Every row sums to one, so the mean exposure is constant.
    EXPECT_NEAR(offset, 0.0, 1e-12);
  }
}

TEST(CorrClustCsTest, TwoByTwoSingletons) {
  const CorrClustCsValue value =
      *CorrClustCsRewrite(testing::TwoByTwo(), 1.0, Clustering::Singletons(2));
  EXPECT_DOUBLE_EQ(value.corr_clust_total, 0.5);
  EXPECT_DOUBLE_EQ(value.constant, -0.5);
  EXPECT_DOUBLE_EQ(value.cs_total(), 1.0);
}

TEST(CorrClustCsTest, PhiZeroHasNoConstant) {
  Rng rng(8);
  const BipartiteGraph g = testing::RandomGraph(rng, 6, 10);
  const Clustering c = testing::RandomClustering(rng, 10, 4);
  const CorrClustCsValue value = *CorrClustCsRewrite(g, 0.0, c);
  EXPECT_EQ(value.constant, 0.0);
  EXPECT_NEAR(value.cs_total(), value.corr_clust_total, 1e-15);
}

TEST(CorrClustCsTest, IdentityHolds) {
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const size_t n = 1 + rng.UniformIndex(10);
    const size_t m = 1 + rng.UniformIndex(20);
    const BipartiteGraph g = testing::RandomGraph(rng, n, m);
    const Clustering c = testing::RandomClustering(rng, m, 8);
    const double phi = 2.0 * rng.Uniform01();
    const CorrClustCsValue value = *CorrClustCsRewrite(g, phi, c);
    EXPECT_NEAR(value.corr_clust_total, value.cs_total() + value.constant,
                1e-10);
    EXPECT_NEAR(value.corr_clust_total, *CorrClustTotal(g, c, phi), 1e-10);
  }
}

TEST(ObjectiveTest, RankingDoesNotDependOnP) {
  Rng rng(55);
  const BipartiteGraph g = testing::RandomGraph(rng, 8, 15);
  std::vector<Clustering> clusterings;
  for (int k = 0; k < 50; ++k) {
    clusterings.push_back(testing::RandomClustering(rng, 15, 15));
  }
  auto ranking = [&](double p) {
    std::vector<size_t> order(clusterings.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> totals;
    for (const Clustering& c : clusterings) {
      totals.push_back(Objective(g, c, 1.0, p)->total);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return totals[a] < totals[b]; });
    return order;
  };
  EXPECT_EQ(ranking(0.5), ranking(0.3));
}

}  // namespace
}  // namespace expodesign
