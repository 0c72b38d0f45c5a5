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

#include "expodesign/scenario.h"

#include <fstream>
#include <optional>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"
#include "expodesign/linkage.h"
#include "expodesign/rng.h"

namespace expodesign {

ScenarioSpec ScenarioSpec::Defaults(ScenarioKind kind) {
  ScenarioSpec spec;
  spec.kind = kind;
  switch (kind) {
    case ScenarioKind::kPositiveTe:
      spec.slope_mean = 1.0;
      spec.slope_var = 0.25;
      spec.intercept_mean = 0.0;
      spec.intercept_var = 0.125;
      break;
    case ScenarioKind::kZeroTe:
      spec.slope_mean = 0.0;
      spec.slope_var = 0.125;
      spec.intercept_mean = 2.0;
      spec.intercept_var = 0.25;
      break;
    case ScenarioKind::kGraphDependent:
      spec.slope_mean = 1.0;
      spec.slope_var = 0.5;
      spec.intercept_mean = 0.0;
      spec.intercept_var = 0.125;
      spec.n_outcome_clusters = 15;
      break;
  }
  return spec;
}

absl::Status ScenarioSpec::Validate() const {
  if (!(slope_var >= 0.0) || !(intercept_var >= 0.0)) {
    return absl::InvalidArgumentError("scenario variances must be >= 0");
  }
  if (kind == ScenarioKind::kGraphDependent && n_outcome_clusters < 1) {
    return absl::InvalidArgumentError("n_outcome_clusters must be >= 1");
  }
  return absl::OkStatus();
}

std::string ScenarioKindName(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kPositiveTe:
      return "positive_te";
    case ScenarioKind::kZeroTe:
      return "zero_te";
    case ScenarioKind::kGraphDependent:
      return "graph_dependent";
  }
  return "unknown";
}

std::string ScenarioSpec::Name() const { return ScenarioKindName(kind); }

absl::StatusOr<ScenarioKind> ParseScenarioKind(const std::string& name) {
  const std::string lower = absl::AsciiStrToLower(name);
  if (lower == "positive_te" || lower == "positive") return ScenarioKind::kPositiveTe;
  if (lower == "zero_te" || lower == "zero") return ScenarioKind::kZeroTe;
  if (lower == "graph_dependent" || lower == "graph") {
    return ScenarioKind::kGraphDependent;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown scenario kind '", name, "'"));
}

absl::StatusOr<ScenarioSpec> ParseScenario(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  size_t line_number = 0;
  std::optional<ScenarioKind> kind;
  while (std::getline(in, line)) {
    ++line_number;
    absl::string_view content(line);
    if (const size_t hash = content.find('#'); hash != absl::string_view::npos) {
      content = content.substr(0, hash);
    }
    content = absl::StripAsciiWhitespace(content);
    if (content.empty()) continue;
    const size_t eq = content.find('=');
    if (eq == absl::string_view::npos) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_number, ": expected key = value"));
    }
    std::string key(absl::StripAsciiWhitespace(content.substr(0, eq)));
    std::string value(absl::StripAsciiWhitespace(content.substr(eq + 1)));
    if (key == "kind") {
      absl::StatusOr<ScenarioKind> parsed = ParseScenarioKind(value);
      if (!parsed.ok()) return parsed.status();
      kind = *parsed;
    } else {
      entries.emplace_back(std::move(key), std::move(value));
    }
  }
  if (!kind) return absl::InvalidArgumentError("scenario file lacks 'kind'");
  ScenarioSpec spec = ScenarioSpec::Defaults(*kind);
  for (const auto& [key, value] : entries) {
    double* target = nullptr;
    if (key == "slope_mean") target = &spec.slope_mean;
    if (key == "slope_var") target = &spec.slope_var;
    if (key == "intercept_mean") target = &spec.intercept_mean;
    if (key == "intercept_var") target = &spec.intercept_var;
    bool ok = true;
    if (target != nullptr) {
      ok = absl::SimpleAtod(value, target);
    } else if (key == "n_outcome_clusters") {
      ok = absl::SimpleAtoi(value, &spec.n_outcome_clusters);
    } else if (key == "model_seed") {
      ok = absl::SimpleAtoi(value, &spec.model_seed);
    } else {
      return absl::InvalidArgumentError(absl::StrCat("unknown scenario key '", key, "'"));
    }
    if (!ok) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad value for ", key, ": '", value, "'"));
    }
  }
  if (absl::Status s = spec.Validate(); !s.ok()) return s;
  return spec;
}

absl::StatusOr<ScenarioSpec> LoadScenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  return ParseScenario(in);
}

absl::StatusOr<std::vector<uint32_t>> SimilarityLinkageGroups(
    const BipartiteGraph& g, size_t num_groups) {
  const size_t n = g.n_outcome();
  std::vector<double> distance(n * n, 0.0);
  // s_{i,j} accumulated through shared diversion units.
  for (size_t j = 0; j < g.n_diversion(); ++j) {
    for (const BipartiteGraph::Entry& a : g.Column(j)) {
      for (const BipartiteGraph::Entry& b : g.Column(j)) {
        distance[a.index * n + b.index] -= a.weight * b.weight;
      }
    }
  }
  absl::StatusOr<std::vector<Merge>> merges = CompleteLinkage(std::move(distance), n);
  if (!merges.ok()) return merges.status();
  return FlattenToClusters(*merges, n, num_groups);
}

absl::StatusOr<OutcomeModel> GenerateOutcomeModel(const BipartiteGraph& g,
                                                  const ScenarioSpec& spec) {
  if (absl::Status s = spec.Validate(); !s.ok()) return s;
  const size_t n = g.n_outcome();
  Rng rng(spec.model_seed);
  OutcomeModel model;
  if (spec.kind != ScenarioKind::kGraphDependent) {
    model.slopes.resize(n);
    model.intercepts.resize(n);
    for (double& m : model.slopes) m = rng.Normal(spec.slope_mean, spec.slope_var);
    for (double& b : model.intercepts) {
      b = rng.Normal(spec.intercept_mean, spec.intercept_var);
    }
    return model;
  }
  if (spec.n_outcome_clusters > n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "n_outcome_clusters ", spec.n_outcome_clusters, " exceeds ", n,
        " outcome units"));
  }
  absl::StatusOr<std::vector<uint32_t>> groups =
      SimilarityLinkageGroups(g, spec.n_outcome_clusters);
  if (!groups.ok()) return groups.status();
  std::vector<double> group_slope(spec.n_outcome_clusters);
  std::vector<double> group_intercept(spec.n_outcome_clusters);
  for (double& m : group_slope) m = rng.Normal(spec.slope_mean, spec.slope_var);
  for (double& b : group_intercept) {
    b = rng.Normal(spec.intercept_mean, spec.intercept_var);
  }
  model.slopes.resize(n);
  model.intercepts.resize(n);
  for (size_t i = 0; i < n; ++i) {
    model.slopes[i] = group_slope[(*groups)[i]];
    model.intercepts[i] = group_intercept[(*groups)[i]];
  }
  return model;
}

}  // namespace expodesign
