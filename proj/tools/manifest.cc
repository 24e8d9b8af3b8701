// Copyright 2026 The LexiMark Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "manifest.h"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>

#include <openssl/evp.h>

#include "absl/strings/str_format.h"
#include "json.hpp"
#include "leximark/corpus.h"
#include "leximark/status_macros.h"
#include "leximark/strings.h"

namespace leximark::cli {

std::string Sha256Hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(),
             nullptr);
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += absl::StrFormat("%02x", digest[i]);
  }
  return out;
}

absl::StatusOr<std::string> PathDigest(const std::string& path) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (fs::is_directory(path, ec)) {
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(path, ec)) {
      if (entry.is_regular_file()) {
        names.push_back(entry.path().filename().string());
      }
    }
    std::sort(names.begin(), names.end());
    std::string listing;
    for (const std::string& name : names) {
      LEXIMARK_ASSIGN_OR_RETURN(std::string digest,
                                PathDigest((fs::path(path) / name).string()));
      StrAppend(&listing, name, " ", digest, "\n");
    }
    return Sha256Hex(listing);
  }
  LEXIMARK_ASSIGN_OR_RETURN(std::string contents, ReadFile(path));
  return Sha256Hex(contents);
}

std::string UtcTimestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

absl::Status WriteManifest(const std::string& path,
                           const RunManifest& manifest) {
  auto digests = [](const std::vector<std::string>& paths)
      -> absl::StatusOr<nlohmann::ordered_json> {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const std::string& p : paths) {
      LEXIMARK_ASSIGN_OR_RETURN(std::string digest, PathDigest(p));
      out.push_back({{"path", p}, {"sha256", digest}});
    }
    return out;
  };
  nlohmann::ordered_json object;
  object["tool"] = "leximark";
  object["version"] = manifest.tool_version;
  object["subcommand"] = manifest.subcommand;
  object["command_line"] = manifest.command_line;
  object["config"] = manifest.config;
  object["seed"] = manifest.seed;
  LEXIMARK_ASSIGN_OR_RETURN(object["inputs"], digests(manifest.inputs));
  LEXIMARK_ASSIGN_OR_RETURN(object["outputs"], digests(manifest.outputs));
  object["started_at"] = manifest.started_at;
  object["finished_at"] = manifest.finished_at;
  return WriteFile(path, object.dump(2) + "\n");
}

}  // namespace leximark::cli
