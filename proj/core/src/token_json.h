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

// Private helpers shared by the protocol codec and dump files.

#ifndef LEXIMARK_SRC_TOKEN_JSON_H_
#define LEXIMARK_SRC_TOKEN_JSON_H_

#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "leximark/providers.h"

namespace leximark {
namespace internal {

// Parses [{"t","lp","mu","sigma"}, ...]; applies the leading-token
// convention.
absl::StatusOr<std::vector<TokenLogProb>> DecodeTokenArray(
    const nlohmann::json& tokens);
nlohmann::json EncodeTokenArray(const std::vector<TokenLogProb>& tokens);

}  // namespace internal
}  // namespace leximark

#endif  // LEXIMARK_SRC_TOKEN_JSON_H_
