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

#include "leximark/protocol.h"
#include "leximark/strings.h"

#include <cmath>

#include "json.hpp"
#include "token_json.h"

namespace leximark {
namespace internal {

using nlohmann::json;

absl::StatusOr<std::vector<TokenLogProb>> DecodeTokenArray(
    const json& tokens) {
  if (!tokens.is_array()) {
    return absl::InvalidArgumentError("'tokens' must be an array");
  }
  std::vector<TokenLogProb> out;
  out.reserve(tokens.size());
  for (const json& item : tokens) {
    if (!item.is_object()) {
      return absl::InvalidArgumentError("token record must be an object");
    }
    auto number = [&](const char* key, double* value) -> bool {
      auto it = item.find(key);
      if (it == item.end() || !it->is_number()) return false;
      *value = it->get<double>();
      return std::isfinite(*value);
    };
    TokenLogProb record;
    auto t = item.find("t");
    if (t == item.end() || !t->is_string()) {
      return absl::InvalidArgumentError(
          StrCat("token ", out.size(), ": missing string 't'"));
    }
    record.token = t->get<std::string>();
    if (!number("lp", &record.logprob) || !number("mu", &record.dist_mean) ||
        !number("sigma", &record.dist_std)) {
      return absl::InvalidArgumentError(StrCat(
          "token ", out.size(), ": 'lp', 'mu' and 'sigma' must be finite"));
    }
    out.push_back(std::move(record));
  }
  ApplyLeadingTokenConvention(out);
  return out;
}

json EncodeTokenArray(const std::vector<TokenLogProb>& tokens) {
  json array = json::array();
  for (const TokenLogProb& token : tokens) {
    array.push_back({{"t", token.token},
                     {"lp", token.logprob},
                     {"mu", token.dist_mean},
                     {"sigma", token.dist_std}});
  }
  return array;
}

}  // namespace internal

namespace protocol {
namespace {

using nlohmann::json;

std::string Dump(const json& value) {
  return value.dump(-1, ' ', false, json::error_handler_t::replace);
}

absl::StatusOr<json> ParseObject(std::string_view body, std::string_view what) {
  try {
    json value = json::parse(body);
    if (!value.is_object()) {
      return absl::InvalidArgumentError(
          StrCat(what, ": expected a JSON object"));
    }
    return value;
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        StrCat(what, ": malformed JSON: ", e.what()));
  }
}

}  // namespace

std::string_view LexSubModeName(LexSubMode mode) {
  return mode == LexSubMode::kConcat ? "concat" : "dropout";
}

std::string EncodeLogProbRequest(std::span<const std::string> texts,
                                 std::string_view model) {
  json body = {{"texts", json(std::vector<std::string>(texts.begin(),
                                                       texts.end()))},
               {"model", std::string(model)}};
  return Dump(body);
}

absl::StatusOr<std::vector<LogProbResult>> DecodeLogProbResponse(
    std::string_view body, std::size_t expected) {
  auto parsed = ParseObject(body, "logprobs response");
  if (!parsed.ok()) return parsed.status();
  const json& object = *parsed;
  auto results = object.find("results");
  if (results == object.end() || !results->is_array()) {
    return absl::InvalidArgumentError(
        "logprobs response: missing 'results' array");
  }
  if (results->size() != expected) {
    return absl::InvalidArgumentError(
        StrCat("logprobs response: expected ", expected,
                     " results, got ", results->size()));
  }
  std::vector<LogProbResult> out;
  for (const json& result : *results) {
    if (!result.is_object() || !result.contains("tokens")) {
      return absl::InvalidArgumentError(
          "logprobs response: result without 'tokens'");
    }
    auto tokens = internal::DecodeTokenArray(result.at("tokens"));
    if (!tokens.ok()) return tokens.status();
    LogProbResult decoded;
    decoded.tokens = std::move(*tokens);
    auto truncated = result.find("truncated");
    decoded.truncated = truncated != result.end() &&
                        truncated->is_boolean() && truncated->get<bool>();
    out.push_back(std::move(decoded));
  }
  return out;
}

std::string EncodeLogProbResponse(std::span<const LogProbResult> results) {
  json array = json::array();
  for (const LogProbResult& result : results) {
    json item = {{"tokens", internal::EncodeTokenArray(result.tokens)}};
    if (result.truncated) item["truncated"] = true;
    array.push_back(std::move(item));
  }
  return Dump(json{{"results", std::move(array)}});
}

std::string EncodeEmbeddingRequest(std::span<const std::string> texts) {
  return Dump(json{
      {"texts", json(std::vector<std::string>(texts.begin(), texts.end()))}});
}

absl::StatusOr<std::vector<EmbeddingVector>> DecodeEmbeddingResponse(
    std::string_view body, std::size_t expected) {
  auto parsed = ParseObject(body, "embeddings response");
  if (!parsed.ok()) return parsed.status();
  const json& object = *parsed;
  auto vectors = object.find("vectors");
  if (vectors == object.end() || !vectors->is_array()) {
    return absl::InvalidArgumentError(
        "embeddings response: missing 'vectors' array");
  }
  if (vectors->size() != expected) {
    return absl::InvalidArgumentError(
        StrCat("embeddings response: expected ", expected,
                     " vectors, got ", vectors->size()));
  }
  std::size_t dim = 0;
  auto dim_field = object.find("dim");
  if (dim_field != object.end()) {
    if (!dim_field->is_number_unsigned() || dim_field->get<std::size_t>() == 0) {
      return absl::InvalidArgumentError(
          "embeddings response: 'dim' must be a positive integer");
    }
    dim = dim_field->get<std::size_t>();
  }
  std::vector<EmbeddingVector> out;
  for (const json& vector : *vectors) {
    if (!vector.is_array()) {
      return absl::InvalidArgumentError(
          "embeddings response: vector must be an array");
    }
    EmbeddingVector decoded;
    for (const json& value : vector) {
      if (!value.is_number()) {
        return absl::InvalidArgumentError(
            "embeddings response: non-numeric component");
      }
      decoded.values.push_back(value.get<double>());
    }
    if (dim == 0) dim = decoded.dim();
    if (decoded.dim() != dim) {
      return absl::InvalidArgumentError(
          StrCat("embeddings response: dimension mismatch (", dim,
                       " vs ", decoded.dim(), ")"));
    }
    out.push_back(std::move(decoded));
  }
  return out;
}

std::string EncodeEmbeddingResponse(std::span<const EmbeddingVector> vectors) {
  json array = json::array();
  for (const EmbeddingVector& v : vectors) array.push_back(v.values);
  json body = {{"vectors", std::move(array)}};
  body["dim"] = vectors.empty() ? 0 : vectors.front().dim();
  return Dump(body);
}

std::string EncodeLexSubRequest(const SynonymQuery& query, LexSubMode mode) {
  return Dump(json{{"word", query.word},
                   {"sentence", query.sentence},
                   {"pos", query.position},
                   {"mode", std::string(LexSubModeName(mode))},
                   {"top_n", query.top_n}});
}

absl::StatusOr<std::vector<SynonymCandidate>> DecodeLexSubResponse(
    std::string_view body) {
  auto parsed = ParseObject(body, "lexsub response");
  if (!parsed.ok()) return parsed.status();
  auto candidates = parsed->find("candidates");
  if (candidates == parsed->end() || !candidates->is_array()) {
    return absl::InvalidArgumentError(
        "lexsub response: missing 'candidates' array");
  }
  std::vector<SynonymCandidate> out;
  for (const json& item : *candidates) {
    if (!item.is_object() || !item.contains("w") || !item.at("w").is_string()) {
      return absl::InvalidArgumentError(
          "lexsub response: candidate without string 'w'");
    }
    SynonymCandidate candidate;
    candidate.word = item.at("w").get<std::string>();
    candidate.rank = out.size();
    auto score = item.find("score");
    if (score != item.end() && score->is_number()) {
      candidate.provider_score = score->get<double>();
    }
    out.push_back(std::move(candidate));
  }
  return out;
}

std::string EncodeLexSubResponse(std::span<const SynonymCandidate> candidates) {
  json array = json::array();
  for (const SynonymCandidate& c : candidates) {
    json item = {{"w", c.word}};
    if (c.provider_score.has_value()) item["score"] = *c.provider_score;
    array.push_back(std::move(item));
  }
  return Dump(json{{"candidates", std::move(array)}});
}

absl::StatusOr<std::vector<std::string>> DecodeTextsRequest(
    std::string_view body) {
  auto parsed = ParseObject(body, "request");
  if (!parsed.ok()) return parsed.status();
  auto texts = parsed->find("texts");
  if (texts == parsed->end() || !texts->is_array()) {
    return absl::InvalidArgumentError("request: missing 'texts' array");
  }
  std::vector<std::string> out;
  for (const json& text : *texts) {
    if (!text.is_string()) {
      return absl::InvalidArgumentError("request: texts must be strings");
    }
    out.push_back(text.get<std::string>());
  }
  return out;
}

absl::StatusOr<std::pair<SynonymQuery, LexSubMode>> DecodeLexSubRequest(
    std::string_view body) {
  auto parsed = ParseObject(body, "lexsub request");
  if (!parsed.ok()) return parsed.status();
  const json& object = *parsed;
  try {
    SynonymQuery query;
    query.word = object.at("word").get<std::string>();
    query.sentence = object.at("sentence").get<std::string>();
    query.position = object.at("pos").get<std::size_t>();
    query.top_n = object.value("top_n", std::size_t{10});
    const std::string mode = object.value("mode", std::string("concat"));
    if (mode != "concat" && mode != "dropout") {
      return absl::InvalidArgumentError(
          StrCat("lexsub request: unknown mode '", mode, "'"));
    }
    return std::make_pair(query, mode == "concat" ? LexSubMode::kConcat
                                                  : LexSubMode::kDropout);
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        StrCat("lexsub request: ", e.what()));
  }
}

}  // namespace protocol
}  // namespace leximark
