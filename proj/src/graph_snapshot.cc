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

#include "expodesign/graph_snapshot.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

#include "absl/strings/str_cat.h"

namespace expodesign {
namespace {

static_assert(std::endian::native == std::endian::little,
              "snapshot I/O assumes a little-endian host");

constexpr char kMagic[8] = {'E', 'X', 'P', 'O', 'G', 'R', 'P', 'H'};

template <typename T>
void Put(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
bool Get(std::istream& in, T& value) {
  return static_cast<bool>(in.read(reinterpret_cast<char*>(&value), sizeof(T)));
}

void PutString(std::ostream& out, const std::string& s) {
  Put(out, static_cast<uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

bool GetString(std::istream& in, std::string& s) {
  uint32_t length = 0;
  if (!Get(in, length)) return false;
  s.resize(length);
  return static_cast<bool>(in.read(s.data(), length));
}

absl::Status Truncated() {
  return absl::DataLossError("graph snapshot is truncated");
}

}  // namespace

void WriteGraphSnapshot(const BipartiteGraph& g, std::ostream& out) {
  out.write(kMagic, sizeof(kMagic));
  Put(out, kSnapshotVersion);
  Put(out, uint32_t{0});
  Put(out, static_cast<uint64_t>(g.n_outcome()));
  Put(out, static_cast<uint64_t>(g.n_diversion()));
  Put(out, static_cast<uint64_t>(g.num_edges()));
  for (size_t offset : g.RowOffsets()) Put(out, static_cast<uint64_t>(offset));
  for (const BipartiteGraph::Entry& e : g.RowEntries()) Put(out, e.index);
  for (const BipartiteGraph::Entry& e : g.RowEntries()) Put(out, e.weight);
  for (const std::string& id : g.outcome_ids()) PutString(out, id);
  for (const std::string& id : g.diversion_ids()) PutString(out, id);
}

absl::StatusOr<BipartiteGraph> ReadGraphSnapshot(std::istream& in) {
  char magic[8];
  if (!in.read(magic, sizeof(magic)) ||
      std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    return absl::InvalidArgumentError("not a graph snapshot (bad magic)");
  }
  uint32_t version = 0, reserved = 0;
  if (!Get(in, version) || !Get(in, reserved)) return Truncated();
  if (version != kSnapshotVersion) {
    return absl::InvalidArgumentError(
        absl::StrCat("unsupported snapshot version ", version));
  }
  uint64_t n = 0, m = 0, nnz = 0;
  if (!Get(in, n) || !Get(in, m) || !Get(in, nnz)) return Truncated();
  std::vector<uint64_t> offsets(n + 1);
  for (uint64_t& o : offsets) {
    if (!Get(in, o)) return Truncated();
  }
  if (offsets.front() != 0 || offsets.back() != nnz) {
    return absl::DataLossError("inconsistent row offsets in snapshot");
  }
  std::vector<uint32_t> cols(nnz);
  for (uint32_t& c : cols) {
    if (!Get(in, c)) return Truncated();
  }
  std::vector<Edge> edges(nnz);
  for (uint64_t i = 0; i < n; ++i) {
    if (offsets[i] > offsets[i + 1]) {
      return absl::DataLossError("row offsets are not monotone");
    }
    for (uint64_t e = offsets[i]; e < offsets[i + 1]; ++e) {
      edges[e].outcome = static_cast<uint32_t>(i);
      edges[e].diversion = cols[e];
    }
  }
  for (Edge& e : edges) {
    if (!Get(in, e.weight)) return Truncated();
  }
  std::vector<std::string> outcome_ids(n), diversion_ids(m);
  for (std::string& id : outcome_ids) {
    if (!GetString(in, id)) return Truncated();
  }
  for (std::string& id : diversion_ids) {
    if (!GetString(in, id)) return Truncated();
  }
  return BipartiteGraph::FromEdges(n, m, std::move(edges),
                                   std::move(outcome_ids),
                                   std::move(diversion_ids));
}

absl::Status SaveGraphSnapshot(const BipartiteGraph& g,
                               const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return absl::PermissionDeniedError(absl::StrCat("cannot write ", path));
  WriteGraphSnapshot(g, out);
  out.close();
  if (!out) return absl::DataLossError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

absl::StatusOr<BipartiteGraph> LoadGraphSnapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  return ReadGraphSnapshot(in);
}

}  // namespace expodesign
