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

#ifndef EXPODESIGN_CLUSTERING_H_
#define EXPODESIGN_CLUSTERING_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "expodesign/graph.h"

namespace expodesign {

// Partition of the diversion units into clusters with dense ids [0, k).
class Clustering {
 public:
  Clustering() = default;

  // Requires ids in [0, k) with every id used.
  static absl::StatusOr<Clustering> FromAssignment(
      std::vector<uint32_t> assignment);
  // Arbitrary labels, renumbered densely in order of first appearance.
  static Clustering FromLabels(std::span<const uint32_t> labels);
  static Clustering Singletons(size_t m);
  static Clustering OneCluster(size_t m);

  size_t size() const { return assignment_.size(); }
  size_t num_clusters() const { return sizes_.size(); }
  uint32_t ClusterOf(size_t j) const { return assignment_[j]; }
  std::span<const uint32_t> assignment() const { return assignment_; }
  std::span<const size_t> sizes() const { return sizes_; }
  size_t MaxClusterSize() const;

  // Members of each cluster in increasing diversion index.
  std::vector<std::vector<uint32_t>> Members() const;

  friend bool operator==(const Clustering&, const Clustering&) = default;

 private:
  std::vector<uint32_t> assignment_;
  std::vector<size_t> sizes_;
};

// Clustering files hold `diversion_id<TAB>cluster_id` lines. Cluster ids are
// arbitrary tokens; every diversion unit of `g` must appear exactly once.
absl::StatusOr<Clustering> ParseClustering(std::istream& in,
                                           const BipartiteGraph& g);
absl::StatusOr<Clustering> LoadClustering(const std::string& path,
                                          const BipartiteGraph& g);
void WriteClustering(const Clustering& c, const BipartiteGraph& g,
                     std::ostream& out);
absl::Status SaveClustering(const Clustering& c, const BipartiteGraph& g,
                            const std::string& path);

}  // namespace expodesign

#endif  // EXPODESIGN_CLUSTERING_H_
