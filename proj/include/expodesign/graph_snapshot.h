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

#ifndef EXPODESIGN_GRAPH_SNAPSHOT_H_
#define EXPODESIGN_GRAPH_SNAPSHOT_H_

#include <istream>
#include <ostream>
#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "expodesign/graph.h"

namespace expodesign {

// Binary container for a BipartiteGraph (little-endian):
//
//   char[8]   magic "EXPOGRPH"
//   uint32    version (1)
//   uint32    reserved (0)
//   uint64    n_outcome, n_diversion, nnz
//   uint64    row_offsets[n_outcome + 1]
//   uint32    col_index[nnz]
//   float64   weight[nnz]
//   then n_outcome + n_diversion ids, each as uint32 length + bytes.
inline constexpr uint32_t kSnapshotVersion = 1;

void WriteGraphSnapshot(const BipartiteGraph& g, std::ostream& out);
absl::StatusOr<BipartiteGraph> ReadGraphSnapshot(std::istream& in);

absl::Status SaveGraphSnapshot(const BipartiteGraph& g, const std::string& path);
absl::StatusOr<BipartiteGraph> LoadGraphSnapshot(const std::string& path);

}  // namespace expodesign

#endif  // EXPODESIGN_GRAPH_SNAPSHOT_H_
