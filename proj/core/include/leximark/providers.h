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

#ifndef LEXIMARK_PROVIDERS_H_
#define LEXIMARK_PROVIDERS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "leximark/corpus.h"
#include "leximark/entropy.h"
#include "leximark/wordnet.h"

namespace leximark {

// ---------------------------------------------------------------------------
// Synonym candidates
// ---------------------------------------------------------------------------

struct SynonymCandidate {
  std::string word;
  std::size_t rank = 0;  // position in the provider's response
  std::optional<double> provider_score;

  friend bool operator==(const SynonymCandidate&,
                         const SynonymCandidate&) = default;
};

struct SynonymQuery {
  std::string word;
  std::string sentence;
  std::size_t position = 0;  // index of the word among the sentence tokens
  std::size_t top_n = 10;
};

class SynonymProvider {
 public:
  virtual ~SynonymProvider() = default;
  virtual std::string_view name() const = 0;
  // Raw provider answer; callers go through SynonymCandidates().
  virtual absl::StatusOr<std::vector<SynonymCandidate>> Candidates(
      const SynonymQuery& query) const = 0;
};

// Queries `provider`, drops the query word itself (case-insensitively) and
// repeats, and truncates to query.top_n. Ranks keep the provider's order.
absl::StatusOr<std::vector<SynonymCandidate>> SynonymCandidates(
    const SynonymProvider& provider, const SynonymQuery& query);

// Context-free lookups in a Lexicon (TSV stub or WNDB-derived).
class LexiconSynonymProvider final : public SynonymProvider {
 public:
  explicit LexiconSynonymProvider(Lexicon lexicon, std::string name = "lexicon")
      : lexicon_(std::move(lexicon)), name_(std::move(name)) {}

  std::string_view name() const override { return name_; }
  absl::StatusOr<std::vector<SynonymCandidate>> Candidates(
      const SynonymQuery& query) const override;

  const Lexicon& lexicon() const { return lexicon_; }

 private:
  Lexicon lexicon_;
  std::string name_;
};

// ---------------------------------------------------------------------------
// Token log-probabilities
// ---------------------------------------------------------------------------

// Natural-log probability of one model token given its prefix, with the mean
// and standard deviation of log p over the vocabulary at that position.
struct TokenLogProb {
  std::string token;
  double logprob = 0.0;
  double dist_mean = 0.0;
  double dist_std = 0.0;
  std::size_t position = 0;
  bool scored = true;  // false for the leading token (no prefix)

  friend bool operator==(const TokenLogProb&, const TokenLogProb&) = default;
};

struct DocumentLogProbs {
  std::string doc_id;
  std::vector<TokenLogProb> tokens;
  bool truncated = false;

  friend bool operator==(const DocumentLogProbs&,
                         const DocumentLogProbs&) = default;
};

// Positions contiguous from 0, logprob <= 0 and dist_std >= 0.
absl::Status ValidateLogProbs(const DocumentLogProbs& doc);

// Marks position 0 unscored and numbers positions.
void ApplyLeadingTokenConvention(std::vector<TokenLogProb>& tokens);

class LogProbProvider {
 public:
  virtual ~LogProbProvider() = default;
  virtual std::string_view name() const = 0;
  virtual absl::StatusOr<std::vector<DocumentLogProbs>> LogProbs(
      std::span<const Document> docs) const = 0;
};

// Rejects empty texts, queries the provider and validates every record.
absl::StatusOr<std::vector<DocumentLogProbs>> TokenLogProbs(
    const LogProbProvider& provider, std::span<const Document> docs);

// Replays a recorded dump (JSONL keyed by document id).
class DumpLogProbProvider final : public LogProbProvider {
 public:
  static absl::StatusOr<DumpLogProbProvider> Load(const std::string& path);
  static absl::StatusOr<DumpLogProbProvider> Parse(std::string_view contents);

  std::string_view name() const override { return "dump"; }
  absl::StatusOr<std::vector<DocumentLogProbs>> LogProbs(
      std::span<const Document> docs) const override;

  std::size_t size() const { return records_.size(); }
  // All records in file order.
  std::vector<DocumentLogProbs> records() const;

 private:
  absl::flat_hash_map<std::string, DocumentLogProbs> records_;
  std::vector<std::string> order_;
};

std::string SerializeLogProbDump(std::span<const DocumentLogProbs> docs);

// Word-level unigram "model" over a FrequencyTable. Every word of the text is
// one token scored by its renormalized table probability; the vocabulary
// moments are those of the renormalized table. Deterministic and offline.
class UnigramLogProbProvider final : public LogProbProvider {
 public:
  explicit UnigramLogProbProvider(const FrequencyTable& table);

  std::string_view name() const override { return "unigram"; }
  absl::StatusOr<std::vector<DocumentLogProbs>> LogProbs(
      std::span<const Document> docs) const override;

 private:
  const FrequencyTable& table_;
  double log_mass_ = 0.0;
  double mean_ = 0.0;
  double std_ = 0.0;
};

// ---------------------------------------------------------------------------
// Text embeddings
// ---------------------------------------------------------------------------

struct EmbeddingVector {
  std::vector<double> values;
  std::size_t dim() const { return values.size(); }
  friend bool operator==(const EmbeddingVector&,
                         const EmbeddingVector&) = default;
};

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::string_view name() const = 0;
  virtual absl::StatusOr<std::vector<EmbeddingVector>> Embed(
      std::span<const std::string> texts) const = 0;
};

// One vector per text; all of the same dimension.
absl::StatusOr<std::vector<EmbeddingVector>> EmbedTexts(
    const EmbeddingProvider& provider, std::span<const std::string> texts);

// dot / sqrt(|a|^2 |b|^2); exactly 1.0 for identical nonzero vectors.
absl::StatusOr<double> CosineSimilarity(const EmbeddingVector& a,
                                        const EmbeddingVector& b);

// Bag-of-words feature hashing (FNV-1a over normalized words), L2
// normalized. Offline stand-in for a sentence encoder.
class HashingEmbeddingProvider final : public EmbeddingProvider {
 public:
  explicit HashingEmbeddingProvider(std::size_t dim = 4096) : dim_(dim) {}

  std::string_view name() const override { return "hashing"; }
  absl::StatusOr<std::vector<EmbeddingVector>> Embed(
      std::span<const std::string> texts) const override;

 private:
  std::size_t dim_;
};

std::uint64_t Fnv1a64(std::string_view bytes);

}  // namespace leximark

#endif  // LEXIMARK_PROVIDERS_H_
