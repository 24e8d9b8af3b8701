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

#ifndef LEXIMARK_TOOLS_MANIFEST_H_
#define LEXIMARK_TOOLS_MANIFEST_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace leximark::cli {

// Lowercase hex SHA-256.
std::string Sha256Hex(std::string_view bytes);

// Digest of a file, or of a directory as the digest of its sorted
// "name sha256" listing.
absl::StatusOr<std::string> PathDigest(const std::string& path);

struct RunManifest {
  std::string tool_version;
  std::vector<std::string> command_line;
  std::string subcommand;
  std::string config;  // effective options, key = value lines
  std::uint64_t seed = 0;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::string started_at;  // ISO-8601 UTC
  std::string finished_at;
};

std::string UtcTimestamp();

// Writes the manifest as JSON with a digest per input and output.
absl::Status WriteManifest(const std::string& path,
                           const RunManifest& manifest);

}  // namespace leximark::cli

#endif  // LEXIMARK_TOOLS_MANIFEST_H_
