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

#include "expodesign/estimator.h"

#include <cmath>

#include "expodesign/design.h"
#include "expodesign/enumeration.h"
#include "expodesign/rng.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace expodesign {
namespace {

using ::testing::DoubleEq;
using ::testing::ElementsAre;

DesignSpec Cluster(Clustering c, double p) {
  return *DesignSpec::IndependentCluster(std::move(c), p);
}

TEST(RespondTest, LinearModel) {
  const std::vector<double> zero_x = {0.0, 1.0};
  EXPECT_THAT(*Respond({{0, 0}, {2, 2}}, zero_x), ElementsAre(2.0, 2.0));
  EXPECT_THAT(*Respond({{1, 1}, {0, 0}}, zero_x), ElementsAre(0.0, 1.0));
  EXPECT_THAT(*Respond({{1, 2}, {0.5, -1}}, zero_x),
              ElementsAre(DoubleEq(0.5), DoubleEq(1.0)));
  EXPECT_FALSE(Respond({{1}, {0}}, zero_x).ok());
}

TEST(TrueAteTest, TwiceTheMeanSlope) {
  EXPECT_DOUBLE_EQ(TrueAte({{1, 2, 3}, {0, 0, 0}}), 4.0);
}

TEST(ErlEstimateTest, SutvaExample) {
  const BipartiteGraph g = testing::Identity(2);
  const ExposureMoments mo =
      *ComputeExposureMoments(g, *DesignSpec::Bernoulli(2, 0.5));
  const std::vector<double> x = {1.0, -1.0};
  const std::vector<double> y = {3.0, 1.0};
  EXPECT_DOUBLE_EQ(*ErlEstimate(y, x, mo), 2.0);
  const std::vector<double> zeros = {0.0, 0.0};
  EXPECT_DOUBLE_EQ(*ErlEstimate(zeros, x, mo), 0.0);
  EXPECT_FALSE(ErlEstimate(std::vector<double>{1.0}, x, mo).ok());
}

TEST(ErlEstimateTest, TwoByTwoAveragesToAte) {
  const BipartiteGraph g = testing::TwoByTwo();
  const DesignSpec d = *DesignSpec::Bernoulli(2, 0.5);
  const ExposureMoments mo = *ComputeExposureMoments(g, d);
  const OutcomeModel model{{1, 1}, {0, 0}};
  const ExactEnumerator e = *ExactEnumerator::Create(g, d);
  const double mean = e.Expect([&](std::span<const double> x) {
    return *ErlEstimate(*Respond(model, x), x, mo);
  });
  EXPECT_NEAR(mean, 2.0, 1e-12);
}

TEST(MseTest, TwoByTwoValues) {
  const BipartiteGraph g = testing::TwoByTwo();
  const DesignSpec d = *DesignSpec::Bernoulli(2, 0.5);
  const OutcomeModel intercept_only{{0, 0}, {1, 1}};
  EXPECT_NEAR(*MseExact(g, d, intercept_only), 5.0, 1e-12);
  EXPECT_NEAR(*MseZeroSlope(g, d, intercept_only), 5.0, 1e-12);
  const OutcomeModel slope_only{{1, 1}, {0, 0}};
  EXPECT_NEAR(*MseZeroInterceptBound(g, d, slope_only), 1.0, 1e-12);
  EXPECT_GE(*MseZeroInterceptBound(g, d, slope_only),
            *MseExact(g, d, slope_only) - 1e-12);
}

TEST(MseTest, ZeroModelHasZeroError) {
  Rng rng(1);
  const BipartiteGraph g = testing::RandomGraph(rng, 4, 6);
  const OutcomeModel zero{std::vector<double>(4), std::vector<double>(4)};
  EXPECT_NEAR(*MseExact(g, *DesignSpec::Bernoulli(6, 0.3), zero), 0.0, 1e-15);
  EXPECT_NEAR(*MseZeroSlope(g, *DesignSpec::Bernoulli(6, 0.3), zero), 0.0,
              1e-15);
}

TEST(MseTest, PreconditionsAreChecked) {
  const BipartiteGraph g = testing::TwoByTwo();
  const OutcomeModel both{{1, 1}, {1, 1}};
  EXPECT_EQ(MseZeroSlope(g, *DesignSpec::Bernoulli(2, 0.5), both).status().code(),
            absl::StatusCode::kFailedPrecondition);
  EXPECT_EQ(MseZeroInterceptBound(g, *DesignSpec::Bernoulli(2, 0.5), both)
                .status()
                .code(),
            absl::StatusCode::kFailedPrecondition);
  const OutcomeModel slopes{{1, 1}, {0, 0}};
  EXPECT_EQ(MseZeroInterceptBound(g, *DesignSpec::Bernoulli(2, 0.3), slopes)
                .status()
                .code(),
            absl::StatusCode::kFailedPrecondition);
  EXPECT_FALSE(MseExact(g, *DesignSpec::Bernoulli(2, 0.5), {{1}, {1}}).ok());
}

TEST(MseTest, SutvaHasNoError) {
  // Under SUTVA with Bernoulli coins, zero-intercept outcomes are
  // estimated exactly and the bound is tight at zero.
  const BipartiteGraph g = testing::Identity(3);
  const DesignSpec d = *DesignSpec::Bernoulli(3, 0.5);
  const OutcomeModel model{{1.0, -2.0, 0.5}, {0, 0, 0}};
  EXPECT_NEAR(*MseExact(g, d, model), 0.0, 1e-15);
  EXPECT_NEAR(*MseZeroInterceptBound(g, d, model), 0.0, 1e-15);
}

TEST(MseTest, AlignedBlocksLeaveOnlyTheDiagonalTerm) {
  // Two outcome units on disjoint clusters: Cov = 0.
  const BipartiteGraph g = *NormalizeRows(*BipartiteGraph::FromEdges(
      2, 4, {{0, 0, 1}, {0, 1, 1}, {1, 2, 1}, {1, 3, 1}}));
  const DesignSpec d = Cluster(*Clustering::FromAssignment({0, 0, 1, 1}), 0.3);
  const OutcomeModel model{{0, 0}, {1.5, -2.0}};
  const ExposureMoments mo = *ComputeExposureMoments(g, d);
  const double expected =
      4.0 / 4.0 *
      (1.5 * 1.5 / mo.variance[0] + 2.0 * 2.0 / mo.variance[1]);
  EXPECT_NEAR(*MseZeroSlope(g, d, model), expected, 1e-12);
  EXPECT_NEAR(*MseExact(g, d, model), expected, 1e-12);
}

// Randomized identities against the enumeration oracle.
TEST(MsePropertyTest, EstimatorIsUnbiased) {
  Rng rng(101);
  const double ps[] = {0.3, 0.5, 0.7};
  for (int trial = 0; trial < 100; ++trial) {
    const size_t n = 1 + rng.UniformIndex(6);
    const size_t m = 1 + rng.UniformIndex(12);
    const BipartiteGraph g = testing::RandomGraph(rng, n, m);
    const DesignSpec d =
        Cluster(testing::RandomClustering(rng, m, 12), ps[trial % 3]);
    const OutcomeModel model = testing::RandomModel(rng, n);
    const ExposureMoments mo = *ComputeExposureMoments(g, d);
    const ExactEnumerator e = *ExactEnumerator::Create(g, d);
    std::vector<double> y(n);
    const double mean = e.Expect([&](std::span<const double> x) {
      for (size_t i = 0; i < n; ++i) {
        y[i] = model.slopes[i] * x[i] + model.intercepts[i];
      }
      return ErlEstimateUnchecked(y, x, mo.mean, mo.variance);
    });
    const double tau = TrueAte(model);
    EXPECT_NEAR(mean, tau, 1e-9 * std::max(1.0, std::abs(tau)));
  }
}

TEST(MsePropertyTest, ClosedFormsMatchExact) {
  Rng rng(202);
  for (int trial = 0; trial < 100; ++trial) {
    const size_t n = 1 + rng.UniformIndex(5);
    const size_t m = 1 + rng.UniformIndex(10);
    const BipartiteGraph g = testing::RandomGraph(rng, n, m);
    const double p = trial % 2 == 0 ? 0.5 : 0.3;
    const DesignSpec d = Cluster(testing::RandomClustering(rng, m, 10), p);
    const OutcomeModel zs = testing::RandomModel(rng, n, /*zero_slope=*/true);
    EXPECT_NEAR(*MseZeroSlope(g, d, zs), *MseExact(g, d, zs),
                1e-9 * std::max(1.0, *MseExact(g, d, zs)));
    const OutcomeModel full = testing::RandomModel(rng, n);
    const double exact = *MseExact(g, d, full);
    EXPECT_NEAR(*MseByUnitDecomposition(g, d, full), exact,
                1e-9 * std::max(1.0, exact));
    if (p == 0.5) {
      const OutcomeModel zi = testing::RandomModel(rng, n, false, true);
      EXPECT_GE(*MseZeroInterceptBound(g, d, zi), *MseExact(g, d, zi) - 1e-12);
    }
  }
}

}  // namespace
}  // namespace expodesign
