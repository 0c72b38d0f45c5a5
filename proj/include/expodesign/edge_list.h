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

#ifndef EXPODESIGN_EDGE_LIST_H_
#define EXPODESIGN_EDGE_LIST_H_

#include <istream>
#include <ostream>
#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "expodesign/graph.h"

namespace expodesign {

// Text edge lists: one `outcome_id diversion_id weight` triple per line,
// whitespace separated. `#` starts a comment; blank lines are skipped. Ids are
// arbitrary strings, mapped to dense indices in order of first appearance.
//
// Duplicate pairs are summed. Diversion units left without a positive-weight
// edge are dropped with a warning. The returned graph is not normalized.
//
// Errors carry the 1-based line number: InvalidArgument for parse failures
// and negative weights, FailedPrecondition for an empty graph.
absl::StatusOr<BipartiteGraph> ParseEdgeList(std::istream& in);
absl::StatusOr<BipartiteGraph> LoadEdgeList(const std::string& path);

// Writes the graph as an edge list with round-trip precision.
void WriteEdgeList(const BipartiteGraph& g, std::ostream& out);
absl::Status SaveEdgeList(const BipartiteGraph& g, const std::string& path);

// `index<TAB>original_id` per line.
void WriteIdMap(const std::vector<std::string>& ids, std::ostream& out);
absl::Status SaveIdMap(const std::vector<std::string>& ids,
                       const std::string& path);

}  // namespace expodesign

#endif  // EXPODESIGN_EDGE_LIST_H_
