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

// JSON bodies of the provider HTTP protocol. All endpoints are POST:
//
//   /v1/logprobs    {"texts": [...], "model": "..."}
//                -> {"results": [{"tokens": [{"t", "lp", "mu", "sigma"}],
//                                 "truncated": bool (optional)}]}
//   /v1/embeddings  {"texts": [...]} -> {"vectors": [[...]], "dim": int}
//   /v1/lexsub      {"word", "sentence", "pos", "mode", "top_n"}
//                -> {"candidates": [{"w": str, "score": float}]}
//
// The same token schema is used by log-prob dump files, one JSON object per
// line: {"id": str, "tokens": [...], "truncated": bool}.

#ifndef LEXIMARK_PROTOCOL_H_
#define LEXIMARK_PROTOCOL_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "leximark/providers.h"

namespace leximark {
namespace protocol {

inline constexpr std::string_view kLogProbsPath = "/v1/logprobs";
inline constexpr std::string_view kEmbeddingsPath = "/v1/embeddings";
inline constexpr std::string_view kLexSubPath = "/v1/lexsub";
inline constexpr std::string_view kHealthPath = "/healthz";

enum class LexSubMode { kConcat, kDropout };
std::string_view LexSubModeName(LexSubMode mode);

std::string EncodeLogProbRequest(std::span<const std::string> texts,
                                 std::string_view model);
// Token records per text, leading token marked unscored. Fails unless the
// response holds exactly `expected` results.
struct LogProbResult {
  std::vector<TokenLogProb> tokens;
  bool truncated = false;
};
absl::StatusOr<std::vector<LogProbResult>> DecodeLogProbResponse(
    std::string_view body, std::size_t expected);
std::string EncodeLogProbResponse(std::span<const LogProbResult> results);

std::string EncodeEmbeddingRequest(std::span<const std::string> texts);
absl::StatusOr<std::vector<EmbeddingVector>> DecodeEmbeddingResponse(
    std::string_view body, std::size_t expected);
std::string EncodeEmbeddingResponse(std::span<const EmbeddingVector> vectors);

std::string EncodeLexSubRequest(const SynonymQuery& query, LexSubMode mode);
absl::StatusOr<std::vector<SynonymCandidate>> DecodeLexSubResponse(
    std::string_view body);
std::string EncodeLexSubResponse(std::span<const SynonymCandidate> candidates);

// Request-side decoders, used by in-process test servers.
absl::StatusOr<std::vector<std::string>> DecodeTextsRequest(
    std::string_view body);
absl::StatusOr<std::pair<SynonymQuery, LexSubMode>> DecodeLexSubRequest(
    std::string_view body);

}  // namespace protocol
}  // namespace leximark

#endif  // LEXIMARK_PROTOCOL_H_
