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

#ifndef EXPODESIGN_TOOLS_MANIFEST_H_
#define EXPODESIGN_TOOLS_MANIFEST_H_

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"

namespace expodesign::cli {

std::string Sha256Hex(const std::string& data);
absl::StatusOr<std::string> Sha256File(const std::string& path);

// Drops the last comma-separated field of every line. Timing columns are kept
// last so that the rest of a file can be compared across runs.
std::string DropLastCsvColumn(const std::string& content);

// Records one command invocation: its arguments, seeds, input and output
// digests, the tool version and the wall-clock time. Paths are stored as
// given, relative to `cwd`.
class ManifestBuilder {
 public:
  ManifestBuilder(std::string command, std::vector<std::string> args);

  void AddSeed(const std::string& name, uint64_t seed);
  absl::Status AddInput(const std::string& path);
  // A timing output carries wall-clock data in its last CSV column; replay
  // compares it with that column removed.
  void AddOutput(const std::string& path, bool timing = false);
  void Set(const std::string& key, nlohmann::ordered_json value);

  // Digests the outputs and writes the manifest.
  absl::Status Write(const std::string& path);

 private:
  nlohmann::ordered_json json_;
  std::vector<std::pair<std::string, bool>> outputs_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace expodesign::cli

#endif  // EXPODESIGN_TOOLS_MANIFEST_H_
