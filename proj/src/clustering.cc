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

#include "expodesign/clustering.h"

#include <algorithm>
#include <fstream>
#include <unordered_map>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"

namespace expodesign {

absl::StatusOr<Clustering> Clustering::FromAssignment(
    std::vector<uint32_t> assignment) {
  Clustering c;
  for (uint32_t id : assignment) {
    if (id >= c.sizes_.size()) c.sizes_.resize(size_t{id} + 1, 0);
    ++c.sizes_[id];
  }
  for (size_t id = 0; id < c.sizes_.size(); ++id) {
    if (c.sizes_[id] == 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("cluster id ", id, " is empty; ids must be dense"));
    }
  }
  c.assignment_ = std::move(assignment);
  return c;
}

Clustering Clustering::FromLabels(std::span<const uint32_t> labels) {
  std::unordered_map<uint32_t, uint32_t> dense;
  Clustering c;
  c.assignment_.reserve(labels.size());
  for (uint32_t label : labels) {
    auto [it, inserted] =
        dense.try_emplace(label, static_cast<uint32_t>(c.sizes_.size()));
    if (inserted) c.sizes_.push_back(0);
    ++c.sizes_[it->second];
    c.assignment_.push_back(it->second);
  }
  return c;
}

Clustering Clustering::Singletons(size_t m) {
  Clustering c;
  c.assignment_.resize(m);
  for (size_t j = 0; j < m; ++j) c.assignment_[j] = static_cast<uint32_t>(j);
  c.sizes_.assign(m, 1);
  return c;
}

Clustering Clustering::OneCluster(size_t m) {
  Clustering c;
  c.assignment_.assign(m, 0);
  if (m > 0) c.sizes_.assign(1, m);
  return c;
}

size_t Clustering::MaxClusterSize() const {
  return sizes_.empty() ? 0 : *std::max_element(sizes_.begin(), sizes_.end());
}

std::vector<std::vector<uint32_t>> Clustering::Members() const {
  std::vector<std::vector<uint32_t>> members(num_clusters());
  for (size_t c = 0; c < members.size(); ++c) members[c].reserve(sizes_[c]);
  for (size_t j = 0; j < assignment_.size(); ++j) {
    members[assignment_[j]].push_back(static_cast<uint32_t>(j));
  }
  return members;
}

absl::StatusOr<Clustering> ParseClustering(std::istream& in,
                                           const BipartiteGraph& g) {
  std::unordered_map<std::string, uint32_t> diversion_index;
  for (size_t j = 0; j < g.n_diversion(); ++j) {
    diversion_index.emplace(g.diversion_ids()[j], static_cast<uint32_t>(j));
  }
  std::unordered_map<std::string, uint32_t> cluster_index;
  std::vector<uint32_t> labels(g.n_diversion(), UINT32_MAX);
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    absl::string_view content = absl::StripTrailingAsciiWhitespace(line);
    if (content.empty() || content.front() == '#') continue;
    std::vector<absl::string_view> fields = absl::StrSplit(content, '\t');
    if (fields.size() != 2) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", line_number, ": expected diversion_id<TAB>cluster_id"));
    }
    auto it = diversion_index.find(std::string(fields[0]));
    if (it == diversion_index.end()) {
      return absl::NotFoundError(absl::StrCat(
          "line ", line_number, ": unknown diversion unit '", fields[0], "'"));
    }
    if (labels[it->second] != UINT32_MAX) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", line_number, ": diversion unit '", fields[0],
          "' assigned twice"));
    }
    auto [cit, inserted] = cluster_index.try_emplace(
        std::string(fields[1]), static_cast<uint32_t>(cluster_index.size()));
    labels[it->second] = cit->second;
  }
  for (size_t j = 0; j < labels.size(); ++j) {
    if (labels[j] == UINT32_MAX) {
      return absl::InvalidArgumentError(absl::StrCat(
          "diversion unit '", g.diversion_ids()[j], "' has no cluster"));
    }
  }
  return Clustering::FromLabels(labels);
}

absl::StatusOr<Clustering> LoadClustering(const std::string& path,
                                          const BipartiteGraph& g) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  return ParseClustering(in, g);
}

void WriteClustering(const Clustering& c, const BipartiteGraph& g,
                     std::ostream& out) {
  for (size_t j = 0; j < c.size(); ++j) {
    out << g.diversion_ids()[j] << '\t' << c.ClusterOf(j) << '\n';
  }
}

absl::Status SaveClustering(const Clustering& c, const BipartiteGraph& g,
                            const std::string& path) {
  if (c.size() != g.n_diversion()) {
    return absl::InvalidArgumentError("clustering size != n_diversion");
  }
  std::ofstream out(path);
  if (!out) return absl::PermissionDeniedError(absl::StrCat("cannot write ", path));
  WriteClustering(c, g, out);
  out.close();
  if (!out) return absl::DataLossError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

}  // namespace expodesign
