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

#ifndef EXPODESIGN_GRAPH_H_
#define EXPODESIGN_GRAPH_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"

namespace expodesign {

inline constexpr double kRowSumTolerance = 1e-12;

struct Edge {
  uint32_t outcome;
  uint32_t diversion;
  double weight;
};

// Weighted bipartite incidence structure W with n outcome units (rows) and m
// diversion units (columns). Stored twice, row-major and column-major, with
// identical edge sets. Only strictly positive weights are stored. Immutable
// after construction.
class BipartiteGraph {
 public:
  struct Entry {
    uint32_t index;  // column index in a row, row index in a column
    double weight;
  };

  BipartiteGraph() = default;

  // Builds a graph from dense-indexed triplets. Duplicate (i, j) pairs are
  // summed and zero weights dropped. Empty id vectors are filled with the
  // decimal index.
  static absl::StatusOr<BipartiteGraph> FromEdges(
      size_t n_outcome, size_t n_diversion, std::vector<Edge> edges,
      std::vector<std::string> outcome_ids = {},
      std::vector<std::string> diversion_ids = {});

  size_t n_outcome() const { return outcome_ids_.size(); }
  size_t n_diversion() const { return diversion_ids_.size(); }
  size_t num_edges() const { return row_entries_.size(); }

  std::span<const Entry> Row(size_t i) const {
    return {row_entries_.data() + row_offsets_[i],
            row_entries_.data() + row_offsets_[i + 1]};
  }
  std::span<const Entry> Column(size_t j) const {
    return {col_entries_.data() + col_offsets_[j],
            col_entries_.data() + col_offsets_[j + 1]};
  }
  size_t OutcomeDegree(size_t i) const {
    return row_offsets_[i + 1] - row_offsets_[i];
  }
  size_t DiversionDegree(size_t j) const {
    return col_offsets_[j + 1] - col_offsets_[j];
  }

  // s_j = sum_k w_{k,j}.
  double ColSum(size_t j) const { return col_sums_[j]; }
  std::span<const double> ColSums() const { return col_sums_; }
  double RowSum(size_t i) const;

  // True when every row sums to 1 within kRowSumTolerance.
  bool IsRowStochastic() const;

  const std::vector<std::string>& outcome_ids() const { return outcome_ids_; }
  const std::vector<std::string>& diversion_ids() const {
    return diversion_ids_;
  }

  // All edges in row-major order.
  std::vector<Edge> Edges() const;

  // Row-major offsets, column indices and weights; used by the snapshot
  // writer.
  std::span<const size_t> RowOffsets() const { return row_offsets_; }
  std::span<const Entry> RowEntries() const { return row_entries_; }

  // Swaps the roles of outcome and diversion units. Not normalized.
  BipartiteGraph Transposed() const;

 private:
  void BuildColumnView();

  std::vector<size_t> row_offsets_{0};
  std::vector<Entry> row_entries_;
  std::vector<size_t> col_offsets_{0};
  std::vector<Entry> col_entries_;
  std::vector<double> col_sums_;
  std::vector<std::string> outcome_ids_;
  std::vector<std::string> diversion_ids_;
};

// Entries are +1 (treatment) or -1 (control), one per diversion unit.
class AssignmentVector {
 public:
  AssignmentVector() = default;
  explicit AssignmentVector(size_t size, int8_t value = 1)
      : values_(size, value) {}

  static absl::StatusOr<AssignmentVector> FromValues(std::vector<int8_t> values);

  size_t size() const { return values_.size(); }
  int8_t operator[](size_t j) const { return values_[j]; }
  void Set(size_t j, bool treated) { values_[j] = treated ? 1 : -1; }
  std::span<const int8_t> values() const { return values_; }

  friend bool operator==(const AssignmentVector&,
                         const AssignmentVector&) = default;

 private:
  std::vector<int8_t> values_;
};

// x_i = sum_j w_{i,j} z_j, one entry per outcome unit.
using ExposureVector = std::vector<double>;

// Keeps outcome units with at least `min_degree` incident edges, then drops
// diversion units left without edges.
absl::StatusOr<BipartiteGraph> FilterMinOutcomeDegree(const BipartiteGraph& g,
                                                      size_t min_degree);

// Drops diversion units without incident edges. `dropped` receives the count.
BipartiteGraph DropIsolatedDiversionUnits(const BipartiteGraph& g,
                                          size_t* dropped = nullptr);

// Scales each row to sum to one.
absl::StatusOr<BipartiteGraph> NormalizeRows(const BipartiteGraph& g);

absl::StatusOr<ExposureVector> Exposures(const BipartiteGraph& g,
                                         const AssignmentVector& z);

// Unchecked variant for hot loops; writes into `out` (resized to n).
void ComputeExposures(const BipartiteGraph& g, std::span<const int8_t> z,
                      ExposureVector& out);

// s_{i,j} = sum_k w_{i,k} w_{j,k} for outcome units i, j.
absl::StatusOr<double> OutcomeSimilarity(const BipartiteGraph& g, size_t i,
                                         size_t j);

// c_{i,j} = sum_k w_{k,i} w_{k,j} for diversion units i, j.
absl::StatusOr<double> DiversionCoweight(const BipartiteGraph& g, size_t i,
                                         size_t j);

// Sparse dot product of two index-sorted entry lists.
double SparseDot(std::span<const BipartiteGraph::Entry> a,
                 std::span<const BipartiteGraph::Entry> b);

// Sums rows of `g` according to `group_of` (dense group ids in [0, k)) and
// renormalizes. Group ids become the new outcome ids ("group_<id>").
absl::StatusOr<BipartiteGraph> AggregateOutcomeUnits(
    const BipartiteGraph& g, std::span<const uint32_t> group_of);

}  // namespace expodesign

#endif  // EXPODESIGN_GRAPH_H_
