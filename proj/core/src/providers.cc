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

#include "leximark/providers.h"

#include <algorithm>
#include <cmath>

#include "absl/container/flat_hash_set.h"
#include "json.hpp"
#include "leximark/status_macros.h"
#include "leximark/strings.h"
#include "leximark/utf8.h"
#include "token_json.h"

namespace leximark {

using nlohmann::json;

absl::StatusOr<std::vector<SynonymCandidate>> SynonymCandidates(
    const SynonymProvider& provider, const SynonymQuery& query) {
  LEXIMARK_ASSIGN_OR_RETURN(std::vector<SynonymCandidate> raw,
                            provider.Candidates(query));
  const std::string query_word = utf8::Lowercase(query.word);
  absl::flat_hash_set<std::string> seen;
  std::vector<SynonymCandidate> out;
  for (SynonymCandidate& candidate : raw) {
    if (out.size() >= query.top_n) break;
    const std::string normalized = utf8::Lowercase(candidate.word);
    if (normalized.empty() || normalized == query_word) continue;
    if (!seen.insert(normalized).second) continue;
    out.push_back(std::move(candidate));
  }
  return out;
}

absl::StatusOr<std::vector<SynonymCandidate>> LexiconSynonymProvider::Candidates(
    const SynonymQuery& query) const {
  std::vector<SynonymCandidate> out;
  for (const std::string& word : lexicon_.Candidates(query.word)) {
    out.push_back({word, out.size(), std::nullopt});
  }
  return out;
}

void ApplyLeadingTokenConvention(std::vector<TokenLogProb>& tokens) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    tokens[i].position = i;
    tokens[i].scored = i > 0;
  }
}

absl::Status ValidateLogProbs(const DocumentLogProbs& doc) {
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    const TokenLogProb& t = doc.tokens[i];
    if (t.position != i) {
      return absl::InvalidArgumentError(StrCat(
          doc.doc_id, ": token positions not contiguous at ", i));
    }
    if (t.scored && !(t.logprob <= 0.0)) {
      return absl::InvalidArgumentError(StrCat(
          doc.doc_id, ": positive log-probability at position ", i));
    }
    if (!(t.dist_std >= 0.0)) {
      return absl::InvalidArgumentError(StrCat(
          doc.doc_id, ": negative distribution std at position ", i));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<DocumentLogProbs>> TokenLogProbs(
    const LogProbProvider& provider, std::span<const Document> docs) {
  for (const Document& doc : docs) {
    if (doc.text.empty()) {
      return absl::InvalidArgumentError(
          StrCat("empty input (document '", doc.id, "')"));
    }
  }
  LEXIMARK_ASSIGN_OR_RETURN(std::vector<DocumentLogProbs> out,
                            provider.LogProbs(docs));
  if (out.size() != docs.size()) {
    return absl::InternalError(StrCat(
        "provider '", provider.name(), "' returned ", out.size(),
        " results for ", docs.size(), " documents"));
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].doc_id = docs[i].id;
    LEXIMARK_RETURN_IF_ERROR(ValidateLogProbs(out[i]));
  }
  return out;
}

absl::StatusOr<DumpLogProbProvider> DumpLogProbProvider::Load(
    const std::string& path) {
  LEXIMARK_ASSIGN_OR_RETURN(std::string contents, ReadFile(path));
  auto provider = Parse(contents);
  if (!provider.ok()) {
    return absl::Status(provider.status().code(),
                        StrCat(path, ": ", provider.status().message()));
  }
  return provider;
}

absl::StatusOr<DumpLogProbProvider> DumpLogProbProvider::Parse(
    std::string_view contents) {
  DumpLogProbProvider provider;
  std::size_t line_number = 0;
  for (std::string_view line : Split(contents, '\n')) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    auto error = [&](std::string_view what) {
      return absl::InvalidArgumentError(
          StrCat("line ", line_number, ": ", what));
    };
    json object;
    try {
      object = json::parse(line);
    } catch (const json::parse_error& e) {
      return error(e.what());
    }
    if (!object.is_object() || !object.contains("id") ||
        !object.at("id").is_string() || !object.contains("tokens")) {
      return error("expected an object with 'id' and 'tokens'");
    }
    auto tokens = internal::DecodeTokenArray(object.at("tokens"));
    if (!tokens.ok()) return error(ToStd(tokens.status().message()));
    DocumentLogProbs record;
    record.doc_id = object.at("id").get<std::string>();
    record.tokens = std::move(*tokens);
    record.truncated = object.value("truncated", false);
    const std::string id = record.doc_id;
    if (!provider.records_.emplace(id, std::move(record)).second) {
      return error(StrCat("duplicate id '", id, "'"));
    }
    provider.order_.push_back(id);
  }
  return provider;
}

std::vector<DocumentLogProbs> DumpLogProbProvider::records() const {
  std::vector<DocumentLogProbs> out;
  out.reserve(order_.size());
  for (const std::string& id : order_) out.push_back(records_.at(id));
  return out;
}

absl::StatusOr<std::vector<DocumentLogProbs>> DumpLogProbProvider::LogProbs(
    std::span<const Document> docs) const {
  std::vector<DocumentLogProbs> out;
  out.reserve(docs.size());
  for (const Document& doc : docs) {
    auto it = records_.find(doc.id);
    if (it == records_.end()) {
      return absl::NotFoundError(
          StrCat("dump has no record for document '", doc.id, "'"));
    }
    out.push_back(it->second);
  }
  return out;
}

std::string SerializeLogProbDump(std::span<const DocumentLogProbs> docs) {
  std::string out;
  for (const DocumentLogProbs& doc : docs) {
    nlohmann::ordered_json line;
    line["id"] = doc.doc_id;
    line["tokens"] = internal::EncodeTokenArray(doc.tokens);
    line["truncated"] = doc.truncated;
    out += line.dump(-1, ' ', false, json::error_handler_t::replace);
    out += '\n';
  }
  return out;
}

UnigramLogProbProvider::UnigramLogProbProvider(const FrequencyTable& table)
    : table_(table) {
  std::vector<double> probabilities;
  probabilities.reserve(table.size());
  for (const auto& [word, p] : table.entries()) probabilities.push_back(p);
  std::sort(probabilities.begin(), probabilities.end());
  double mass = 0.0;
  for (double p : probabilities) mass += p;
  if (mass <= 0.0) mass = 1.0;
  log_mass_ = std::log(mass);
  double mean = 0.0;
  for (double p : probabilities) {
    const double q = p / mass;
    mean += q * std::log(q);
  }
  double variance = 0.0;
  for (double p : probabilities) {
    const double q = p / mass;
    const double d = std::log(q) - mean;
    variance += q * d * d;
  }
  mean_ = mean;
  std_ = std::sqrt(variance);
}

absl::StatusOr<std::vector<DocumentLogProbs>> UnigramLogProbProvider::LogProbs(
    std::span<const Document> docs) const {
  std::vector<DocumentLogProbs> out;
  out.reserve(docs.size());
  for (const Document& doc : docs) {
    DocumentLogProbs record;
    record.doc_id = doc.id;
    for (const WordToken& token : TokenizeWords(doc.text)) {
      TokenLogProb t;
      t.token = token.surface;
      t.logprob = std::min(
          0.0, -table_.Entropy(token.normalized) * std::log(2.0) - log_mass_);
      t.dist_mean = mean_;
      t.dist_std = std_;
      record.tokens.push_back(std::move(t));
    }
    if (record.tokens.empty()) {
      return absl::InvalidArgumentError(
          StrCat("document '", doc.id, "' has no word tokens"));
    }
    ApplyLeadingTokenConvention(record.tokens);
    out.push_back(std::move(record));
  }
  return out;
}

absl::StatusOr<std::vector<EmbeddingVector>> EmbedTexts(
    const EmbeddingProvider& provider, std::span<const std::string> texts) {
  if (texts.empty()) {
    return absl::InvalidArgumentError("embed_texts: empty batch");
  }
  LEXIMARK_ASSIGN_OR_RETURN(std::vector<EmbeddingVector> vectors,
                            provider.Embed(texts));
  if (vectors.size() != texts.size()) {
    return absl::InternalError(
        StrCat("provider '", provider.name(), "' returned ",
                     vectors.size(), " vectors for ", texts.size(), " texts"));
  }
  for (const EmbeddingVector& v : vectors) {
    if (v.dim() == 0 || v.dim() != vectors.front().dim()) {
      return absl::InternalError(StrCat(
          "provider '", provider.name(), "' returned mismatched dimensions"));
    }
  }
  return vectors;
}

absl::StatusOr<double> CosineSimilarity(const EmbeddingVector& a,
                                        const EmbeddingVector& b) {
  if (a.dim() != b.dim()) {
    return absl::InvalidArgumentError(StrCat(
        "cosine: dimension mismatch ", a.dim(), " vs ", b.dim()));
  }
  double dot = 0.0;
  double norm_a = 0.0;
  double norm_b = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    dot += a.values[i] * b.values[i];
    norm_a += a.values[i] * a.values[i];
    norm_b += b.values[i] * b.values[i];
  }
  if (norm_a == 0.0 || norm_b == 0.0) {
    return absl::InvalidArgumentError("cosine: zero vector");
  }
  return std::clamp(dot / std::sqrt(norm_a * norm_b), -1.0, 1.0);
}

std::uint64_t Fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

absl::StatusOr<std::vector<EmbeddingVector>> HashingEmbeddingProvider::Embed(
    std::span<const std::string> texts) const {
  if (dim_ == 0) return absl::FailedPreconditionError("hashing: dim is 0");
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) {
    EmbeddingVector v;
    v.values.assign(dim_, 0.0);
    const std::vector<WordToken> tokens = TokenizeWords(text);
    if (tokens.empty()) {
      v.values[Fnv1a64(text) % dim_] = 1.0;
    } else {
      for (const WordToken& token : tokens) {
        v.values[Fnv1a64(token.normalized) % dim_] += 1.0;
      }
    }
    double norm = 0.0;
    for (double x : v.values) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : v.values) x /= norm;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace leximark
