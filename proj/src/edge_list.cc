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

#include "expodesign/edge_list.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <unordered_map>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"
#include "spdlog/spdlog.h"

namespace expodesign {
namespace {

class IdIndex {
 public:
  uint32_t Intern(absl::string_view id) {
    auto [it, inserted] =
        index_.try_emplace(std::string(id), static_cast<uint32_t>(ids_.size()));
    if (inserted) ids_.emplace_back(id);
    return it->second;
  }
  std::vector<std::string>& ids() { return ids_; }

 private:
  std::unordered_map<std::string, uint32_t> index_;
  std::vector<std::string> ids_;
};

}  // namespace

absl::StatusOr<BipartiteGraph> ParseEdgeList(std::istream& in) {
  IdIndex outcomes;
  IdIndex diversions;
  std::vector<Edge> edges;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    absl::string_view content(line);
    if (const size_t hash = content.find('#'); hash != absl::string_view::npos) {
      content = content.substr(0, hash);
    }
    std::vector<absl::string_view> fields =
        absl::StrSplit(content, absl::ByAnyChar(" \t\r"), absl::SkipEmpty());
    if (fields.empty()) continue;
    if (fields.size() != 3) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_number, ": expected 3 fields, got ",
                       fields.size()));
    }
    double weight = 0.0;
    const auto [end, ec] = std::from_chars(
        fields[2].data(), fields[2].data() + fields[2].size(), weight);
    if (ec != std::errc() || end != fields[2].data() + fields[2].size() ||
        !std::isfinite(weight)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", line_number, ": cannot parse weight '", fields[2], "'"));
    }
    if (weight < 0.0) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", line_number, ": NegativeWeight ", fields[2]));
    }
    edges.push_back(
        {outcomes.Intern(fields[0]), diversions.Intern(fields[1]), weight});
  }
  if (in.bad()) return absl::DataLossError("read error");
  const size_t n = outcomes.ids().size();
  const size_t m = diversions.ids().size();
  absl::StatusOr<BipartiteGraph> g =
      BipartiteGraph::FromEdges(n, m, std::move(edges),
                                std::move(outcomes.ids()),
                                std::move(diversions.ids()));
  if (!g.ok()) return g.status();
  if (g->num_edges() == 0) {
    return absl::FailedPreconditionError("edge list contains no positive edges");
  }
  size_t dropped = 0;
  BipartiteGraph compact = DropIsolatedDiversionUnits(*g, &dropped);
  if (dropped > 0) {
    spdlog::warn("dropped {} diversion unit(s) with zero total weight", dropped);
  }
  return compact;
}

absl::StatusOr<BipartiteGraph> LoadEdgeList(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  return ParseEdgeList(in);
}

void WriteEdgeList(const BipartiteGraph& g, std::ostream& out) {
  for (size_t i = 0; i < g.n_outcome(); ++i) {
    for (const BipartiteGraph::Entry& e : g.Row(i)) {
      out << absl::StrFormat("%s %s %.17g\n", g.outcome_ids()[i],
                             g.diversion_ids()[e.index], e.weight);
    }
  }
}

absl::Status SaveEdgeList(const BipartiteGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) return absl::PermissionDeniedError(absl::StrCat("cannot write ", path));
  WriteEdgeList(g, out);
  out.close();
  if (!out) return absl::DataLossError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

void WriteIdMap(const std::vector<std::string>& ids, std::ostream& out) {
  for (size_t i = 0; i < ids.size(); ++i) out << i << '\t' << ids[i] << '\n';
}

absl::Status SaveIdMap(const std::vector<std::string>& ids,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) return absl::PermissionDeniedError(absl::StrCat("cannot write ", path));
  WriteIdMap(ids, out);
  out.close();
  if (!out) return absl::DataLossError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

}  // namespace expodesign
