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
#include <numeric>
#include <tuple>
#include <string>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace expodesign {
namespace {

std::vector<std::string> DefaultIds(size_t count) {
  std::vector<std::string> ids(count);
  for (size_t i = 0; i < count; ++i) ids[i] = std::to_string(i);
  return ids;
}

}  // namespace

absl::StatusOr<BipartiteGraph> BipartiteGraph::FromEdges(
    size_t n_outcome, size_t n_diversion, std::vector<Edge> edges,
    std::vector<std::string> outcome_ids,
    std::vector<std::string> diversion_ids) {
  if (outcome_ids.empty()) outcome_ids = DefaultIds(n_outcome);
  if (diversion_ids.empty()) diversion_ids = DefaultIds(n_diversion);
  if (outcome_ids.size() != n_outcome || diversion_ids.size() != n_diversion) {
    return absl::InvalidArgumentError("id vector size does not match count");
  }
  for (const Edge& e : edges) {
    if (e.outcome >= n_outcome || e.diversion >= n_diversion) {
      return absl::OutOfRangeError(absl::StrCat(
          "edge (", e.outcome, ", ", e.diversion, ") outside ", n_outcome,
          " x ", n_diversion));
    }
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
      return absl::InvalidArgumentError(
          absl::StrCat("invalid edge weight ", e.weight));
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.outcome, a.diversion) < std::tie(b.outcome, b.diversion);
  });

  BipartiteGraph g;
  g.outcome_ids_ = std::move(outcome_ids);
  g.diversion_ids_ = std::move(diversion_ids);
  g.row_offsets_.assign(n_outcome + 1, 0);
  g.row_entries_.reserve(edges.size());
  for (size_t e = 0; e < edges.size();) {
    const uint32_t i = edges[e].outcome;
    const uint32_t j = edges[e].diversion;
    double weight = 0.0;
    for (; e < edges.size() && edges[e].outcome == i &&
           edges[e].diversion == j;
         ++e) {
      weight += edges[e].weight;
    }
    if (weight > 0.0) {
      g.row_entries_.push_back({j, weight});
      ++g.row_offsets_[i + 1];
    }
  }
  std::partial_sum(g.row_offsets_.begin(), g.row_offsets_.end(),
                   g.row_offsets_.begin());
  g.BuildColumnView();
  return g;
}

void BipartiteGraph::BuildColumnView() {
  const size_t m = diversion_ids_.size();
  col_offsets_.assign(m + 1, 0);
  for (const Entry& e : row_entries_) ++col_offsets_[e.index + 1];
  std::partial_sum(col_offsets_.begin(), col_offsets_.end(),
                   col_offsets_.begin());
  col_entries_.resize(row_entries_.size());
  std::vector<size_t> cursor(col_offsets_.begin(), col_offsets_.end() - 1);
  for (size_t i = 0; i + 1 < row_offsets_.size(); ++i) {
    for (size_t e = row_offsets_[i]; e < row_offsets_[i + 1]; ++e) {
      const Entry& entry = row_entries_[e];
      col_entries_[cursor[entry.index]++] = {static_cast<uint32_t>(i),
                                             entry.weight};
    }
  }
  col_sums_.assign(m, 0.0);
  for (size_t j = 0; j < m; ++j) {
    for (const Entry& e : Column(j)) col_sums_[j] += e.weight;
  }
}

double BipartiteGraph::RowSum(size_t i) const {
  double sum = 0.0;
  for (const Entry& e : Row(i)) sum += e.weight;
  return sum;
}

bool BipartiteGraph::IsRowStochastic() const {
  for (size_t i = 0; i < n_outcome(); ++i) {
    if (std::abs(RowSum(i) - 1.0) > kRowSumTolerance) return false;
  }
  return true;
}

std::vector<Edge> BipartiteGraph::Edges() const {
  std::vector<Edge> edges;
  edges.reserve(num_edges());
  for (size_t i = 0; i < n_outcome(); ++i) {
    for (const Entry& e : Row(i)) {
      edges.push_back({static_cast<uint32_t>(i), e.index, e.weight});
    }
  }
  return edges;
}

BipartiteGraph BipartiteGraph::Transposed() const {
  BipartiteGraph t;
  t.outcome_ids_ = diversion_ids_;
  t.diversion_ids_ = outcome_ids_;
  t.row_offsets_ = col_offsets_;
  t.row_entries_ = col_entries_;
  t.BuildColumnView();
  return t;
}

absl::StatusOr<AssignmentVector> AssignmentVector::FromValues(
    std::vector<int8_t> values) {
  for (size_t j = 0; j < values.size(); ++j) {
    if (values[j] != 1 && values[j] != -1) {
      return absl::InvalidArgumentError(absl::StrCat(
          "assignment entry ", j, " is ", static_cast<int>(values[j]),
          ", expected +1 or -1"));
    }
  }
  AssignmentVector z;
  z.values_ = std::move(values);
  return z;
}

absl::StatusOr<BipartiteGraph> FilterMinOutcomeDegree(const BipartiteGraph& g,
                                                      size_t min_degree) {
  std::vector<uint32_t> new_index(g.n_outcome(), UINT32_MAX);
  std::vector<std::string> outcome_ids;
  for (size_t i = 0; i < g.n_outcome(); ++i) {
    if (g.OutcomeDegree(i) >= min_degree) {
      new_index[i] = static_cast<uint32_t>(outcome_ids.size());
      outcome_ids.push_back(g.outcome_ids()[i]);
    }
  }
  if (outcome_ids.empty()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "no outcome unit has at least ", min_degree, " incident edges"));
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.Edges()) {
    if (new_index[e.outcome] != UINT32_MAX) {
      edges.push_back({new_index[e.outcome], e.diversion, e.weight});
    }
  }
  const size_t kept = outcome_ids.size();
  absl::StatusOr<BipartiteGraph> filtered = BipartiteGraph::FromEdges(
      kept, g.n_diversion(), std::move(edges),
      std::move(outcome_ids), g.diversion_ids());
  if (!filtered.ok()) return filtered.status();
  return DropIsolatedDiversionUnits(*filtered);
}

BipartiteGraph DropIsolatedDiversionUnits(const BipartiteGraph& g,
                                          size_t* dropped) {
  std::vector<uint32_t> new_index(g.n_diversion(), UINT32_MAX);
  std::vector<std::string> diversion_ids;
  for (size_t j = 0; j < g.n_diversion(); ++j) {
    if (g.DiversionDegree(j) > 0) {
      new_index[j] = static_cast<uint32_t>(diversion_ids.size());
      diversion_ids.push_back(g.diversion_ids()[j]);
    }
  }
  if (dropped != nullptr) *dropped = g.n_diversion() - diversion_ids.size();
  if (diversion_ids.size() == g.n_diversion()) return g;
  std::vector<Edge> edges = g.Edges();
  for (Edge& e : edges) e.diversion = new_index[e.diversion];
  const size_t kept = diversion_ids.size();
  // Indices are valid by construction, so this cannot fail.
  return *BipartiteGraph::FromEdges(g.n_outcome(), kept,
                                    std::move(edges), g.outcome_ids(),
                                    std::move(diversion_ids));
}

absl::StatusOr<BipartiteGraph> NormalizeRows(const BipartiteGraph& g) {
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (size_t i = 0; i < g.n_outcome(); ++i) {
    const double total = g.RowSum(i);
    if (!(total > 0.0)) {
      return absl::FailedPreconditionError(absl::StrCat(
          "outcome unit ", g.outcome_ids()[i], " has zero total weight"));
    }
    for (const BipartiteGraph::Entry& e : g.Row(i)) {
      edges.push_back({static_cast<uint32_t>(i), e.index, e.weight / total});
    }
  }
  return BipartiteGraph::FromEdges(g.n_outcome(), g.n_diversion(),
                                   std::move(edges), g.outcome_ids(),
                                   g.diversion_ids());
}

void ComputeExposures(const BipartiteGraph& g, std::span<const int8_t> z,
                      ExposureVector& out) {
  out.resize(g.n_outcome());
  for (size_t i = 0; i < g.n_outcome(); ++i) {
    double x = 0.0;
    for (const BipartiteGraph::Entry& e : g.Row(i)) x += e.weight * z[e.index];
    out[i] = x;
  }
}

absl::StatusOr<ExposureVector> Exposures(const BipartiteGraph& g,
                                         const AssignmentVector& z) {
  if (z.size() != g.n_diversion()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "assignment has length ", z.size(), ", graph has ", g.n_diversion(),
        " diversion units"));
  }
  ExposureVector x;
  ComputeExposures(g, z.values(), x);
  return x;
}

double SparseDot(std::span<const BipartiteGraph::Entry> a,
                 std::span<const BipartiteGraph::Entry> b) {
  double sum = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->index < ib->index) {
      ++ia;
    } else if (ib->index < ia->index) {
      ++ib;
    } else {
      sum += ia->weight * ib->weight;
      ++ia;
      ++ib;
    }
  }
  return sum;
}

absl::StatusOr<double> OutcomeSimilarity(const BipartiteGraph& g, size_t i,
                                         size_t j) {
  if (i >= g.n_outcome() || j >= g.n_outcome()) {
    return absl::OutOfRangeError(absl::StrCat("outcome index out of range: (",
                                              i, ", ", j, ")"));
  }
  return SparseDot(g.Row(i), g.Row(j));
}

absl::StatusOr<double> DiversionCoweight(const BipartiteGraph& g, size_t i,
                                         size_t j) {
  if (i >= g.n_diversion() || j >= g.n_diversion()) {
    return absl::OutOfRangeError(absl::StrCat(
        "diversion index out of range: (", i, ", ", j, ")"));
  }
  std::span<const BipartiteGraph::Entry> a = g.Column(i);
  std::span<const BipartiteGraph::Entry> b = g.Column(j);
  if (a.size() > b.size()) std::swap(a, b);
  // Walk the shorter column and binary-search the longer one.
  double sum = 0.0;
  for (const BipartiteGraph::Entry& e : a) {
    auto it = std::lower_bound(
        b.begin(), b.end(), e.index,
        [](const BipartiteGraph::Entry& x, uint32_t k) { return x.index < k; });
    if (it != b.end() && it->index == e.index) sum += e.weight * it->weight;
  }
  return sum;
}

absl::StatusOr<BipartiteGraph> AggregateOutcomeUnits(
    const BipartiteGraph& g, std::span<const uint32_t> group_of) {
  if (group_of.size() != g.n_outcome()) {
    return absl::InvalidArgumentError("group vector length != n_outcome");
  }
  const size_t groups =
      group_of.empty() ? 0 : *std::max_element(group_of.begin(), group_of.end()) + 1;
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (size_t i = 0; i < g.n_outcome(); ++i) {
    for (const BipartiteGraph::Entry& e : g.Row(i)) {
      edges.push_back({group_of[i], e.index, e.weight});
    }
  }
  std::vector<std::string> ids(groups);
  for (size_t c = 0; c < groups; ++c) ids[c] = absl::StrCat("group_", c);
  absl::StatusOr<BipartiteGraph> summed = BipartiteGraph::FromEdges(
      groups, g.n_diversion(), std::move(edges), std::move(ids),
      g.diversion_ids());
  if (!summed.ok()) return summed.status();
  return NormalizeRows(*summed);
}

}  // namespace expodesign
