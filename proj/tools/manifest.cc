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

#include "manifest.h"

#include <openssl/evp.h>

#include <ctime>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

#ifndef EXPODESIGN_VERSION
#define EXPODESIGN_VERSION "unknown"
#endif

namespace expodesign::cli {
namespace {

std::string UtcNow() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream content;
  content << in.rdbuf();
  return content.str();
}

}  // namespace

std::string Sha256Hex(const std::string& data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  EVP_DigestUpdate(ctx.get(), data.data(), data.size());
  EVP_DigestFinal_ex(ctx.get(), digest, &length);
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    absl::StrAppend(&hex, absl::StrFormat("%02x", digest[i]));
  }
  return hex;
}

absl::StatusOr<std::string> Sha256File(const std::string& path) {
  absl::StatusOr<std::string> content = ReadFile(path);
  if (!content.ok()) return content.status();
  return Sha256Hex(*content);
}

std::string DropLastCsvColumn(const std::string& content) {
  std::string result;
  std::istringstream in(content);
  std::string line;
  while (std::getline(in, line)) {
    const size_t comma = line.rfind(',');
    result.append(line, 0, comma == std::string::npos ? line.size() : comma);
    result.push_back('\n');
  }
  return result;
}

ManifestBuilder::ManifestBuilder(std::string command,
                                 std::vector<std::string> args)
    : start_(std::chrono::steady_clock::now()) {
  json_["tool"] = "expodesign";
  json_["version"] = EXPODESIGN_VERSION;
  json_["command"] = std::move(command);
  json_["args"] = std::move(args);
  json_["cwd"] = std::filesystem::current_path().string();
  json_["started_at"] = UtcNow();
  json_["seeds"] = nlohmann::ordered_json::object();
  json_["inputs"] = nlohmann::ordered_json::array();
}

void ManifestBuilder::AddSeed(const std::string& name, uint64_t seed) {
  json_["seeds"][name] = seed;
}

absl::Status ManifestBuilder::AddInput(const std::string& path) {
  absl::StatusOr<std::string> digest = Sha256File(path);
  if (!digest.ok()) return digest.status();
  json_["inputs"].push_back({{"path", path}, {"sha256", *digest}});
  return absl::OkStatus();
}

void ManifestBuilder::AddOutput(const std::string& path, bool timing) {
  outputs_.emplace_back(path, timing);
}

void ManifestBuilder::Set(const std::string& key, nlohmann::ordered_json value) {
  json_[key] = std::move(value);
}

absl::Status ManifestBuilder::Write(const std::string& path) {
  nlohmann::ordered_json outputs = nlohmann::ordered_json::array();
  for (const auto& [output, timing] : outputs_) {
    absl::StatusOr<std::string> content = ReadFile(output);
    if (!content.ok()) return content.status();
    nlohmann::ordered_json entry = {{"path", output},
                                    {"sha256", Sha256Hex(*content)}};
    if (timing) {
      entry["timing"] = true;
      entry["sha256_without_timing"] = Sha256Hex(DropLastCsvColumn(*content));
    }
    outputs.push_back(std::move(entry));
  }
  json_["outputs"] = std::move(outputs);
  json_["wall_clock_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
          .count();
  std::ofstream out(path, std::ios::binary);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  out << json_.dump(2) << "\n";
  out.close();
  if (!out) return absl::DataLossError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

}  // namespace expodesign::cli
