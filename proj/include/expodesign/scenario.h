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

#ifndef EXPODESIGN_SCENARIO_H_
#define EXPODESIGN_SCENARIO_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "expodesign/estimator.h"
#include "expodesign/graph.h"

namespace expodesign {

enum class ScenarioKind { kPositiveTe, kZeroTe, kGraphDependent };

// Parameters of the one-time outcome model draw. Variances, not standard
// deviations.
struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::kPositiveTe;
  double slope_mean = 1.0;
  double slope_var = 0.25;
  double intercept_mean = 0.0;
  double intercept_var = 0.125;
  size_t n_outcome_clusters = 15;  // kGraphDependent only
  uint64_t model_seed = 0;

  // Defaults for each kind:
  //   positive_te:     m ~ N(1, 1/4),  b ~ N(0, 1/8)
  //   zero_te:         m ~ N(0, 1/8),  b ~ N(2, 1/4)
  //   graph_dependent: m ~ N(1, 1/2),  b ~ N(0, 1/8), 15 outcome clusters
  static ScenarioSpec Defaults(ScenarioKind kind);

  absl::Status Validate() const;
  std::string Name() const;
};

absl::StatusOr<ScenarioKind> ParseScenarioKind(const std::string& name);
std::string ScenarioKindName(ScenarioKind kind);

// `key = value` lines; `#` comments. `kind` selects the defaults, other keys
// (slope_mean, slope_var, intercept_mean, intercept_var, n_outcome_clusters,
// model_seed) override them.
absl::StatusOr<ScenarioSpec> ParseScenario(std::istream& in);
absl::StatusOr<ScenarioSpec> LoadScenario(const std::string& path);

// Draws the outcome model once from Rng(model_seed) via the polar method.
//   positive_te / zero_te: slope_i for every unit in index order, then
//     intercept_i for every unit.
//   graph_dependent: outcome units are grouped by complete linkage on the
//     distance -s_{i,j} and cut to n_outcome_clusters groups; one slope per
//     group in group order, then one intercept per group, shared by members.
absl::StatusOr<OutcomeModel> GenerateOutcomeModel(const BipartiteGraph& g,
                                                  const ScenarioSpec& spec);

// Complete-linkage grouping of outcome units by similarity (distance
// -s_{i,j}), flattened to exactly `num_groups` groups. O(n^2) memory.
absl::StatusOr<std::vector<uint32_t>> SimilarityLinkageGroups(
    const BipartiteGraph& g, size_t num_groups);

}  // namespace expodesign

#endif  // EXPODESIGN_SCENARIO_H_
