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

#ifndef LEXIMARK_EMBEDDER_H_
#define LEXIMARK_EMBEDDER_H_

#include <cstddef>
#include <cstdint>
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
#include "leximark/providers.h"

namespace leximark {

enum class SynonymSource { kTsvStub, kWndb, kRemoteConcat, kRemoteDropout };

std::string_view SynonymSourceName(SynonymSource source);
absl::StatusOr<SynonymSource> ParseSynonymSource(std::string_view name);

struct EmbedConfig {
  std::size_t k = 5;
  SynonymSource synonym_source = SynonymSource::kTsvStub;
  // Minimum cosine between the original sentence and the sentence with the
  // candidate substituted. Unset disables the filter.
  std::optional<double> similarity_threshold;
  std::size_t top_n_candidates = 10;
  double watermark_fraction = 1.0;  // share of documents watermarked
  std::uint64_t seed = 0;
  std::size_t threads = 1;

  absl::Status Validate() const;
};

// The providers the pipeline talks to. `embeddings` is needed only when a
// similarity threshold is set.
struct EmbedProviders {
  const SynonymProvider* synonyms = nullptr;
  const EmbeddingProvider* embeddings = nullptr;
};

enum class DecisionSource { kFresh, kCache };

struct SubstitutionRecord {
  std::string doc_id;
  std::size_t sentence_index = 0;
  std::size_t start = 0;  // byte offset of the occurrence in the input text
  std::string original;     // surface form as it appeared
  std::string replacement;  // surface form as written
  double original_entropy = 0.0;
  double replacement_entropy = 0.0;
  DecisionSource source = DecisionSource::kFresh;
  std::optional<double> similarity;  // set when the filter accepted it

  friend bool operator==(const SubstitutionRecord&,
                         const SubstitutionRecord&) = default;
};

// Outcome of evaluating one keyword. No replacement means "keep".
struct ReplacementDecision {
  std::optional<std::string> replacement;  // lowercased
  double original_entropy = 0.0;
  double replacement_entropy = 0.0;
  std::optional<double> similarity;
};

// Normalized word -> decision. Once a word is decided, every later
// occurrence uses that decision.
class SubstitutionCache {
 public:
  const ReplacementDecision* Find(std::string_view word) const;
  void Insert(std::string word, ReplacementDecision decision);
  std::size_t size() const { return decisions_.size(); }

 private:
  absl::flat_hash_map<std::string, ReplacementDecision> decisions_;
};

// One sentence as seen by the pipeline: its text and tokens (document
// offsets).
struct SentenceView {
  std::string_view text;
  std::size_t offset = 0;  // document offset of text[0]
  std::span<const WordToken> tokens;
};

// Rewrites every occurrence of `normalized` in the sentence with
// `replacement`, capitalizing the first letter where the original did.
std::string SubstituteInSentence(const SentenceView& sentence,
                                 std::string_view normalized,
                                 std::string_view replacement);

// Picks the best-ranked candidate that is a single word of letters, has
// strictly higher entropy than the keyword and, when a threshold is set,
// keeps the sentence cosine at or above it.
absl::StatusOr<ReplacementDecision> ChooseReplacement(
    const SentenceView& sentence, const ScoredKeyword& keyword,
    std::size_t token_index, const FrequencyTable& table,
    const EmbedProviders& providers, const EmbedConfig& config);

struct DocumentEmbedResult {
  Document document;
  std::vector<SubstitutionRecord> records;
};

// Watermarks one document, reading and extending `cache`.
absl::StatusOr<DocumentEmbedResult> EmbedDocument(
    const Document& doc, const FrequencyTable& table,
    const ExclusionPolicy& policy, const EmbedProviders& providers,
    const EmbedConfig& config, SubstitutionCache& cache);

struct WatermarkLog {
  std::vector<SubstitutionRecord> records;  // document order
  std::vector<std::string> watermarked_ids;
};

struct CorpusEmbedResult {
  std::vector<Document> documents;
  WatermarkLog log;
};

// Watermarks ceil(fraction * N) documents picked by a seeded draw; the rest
// are copied verbatim. Output is identical for any thread count: first
// occurrences are found in a sequential pass, evaluated in parallel, and
// the cache is replayed in document order.
absl::StatusOr<CorpusEmbedResult> EmbedCorpus(
    std::span<const Document> corpus, const FrequencyTable& table,
    const ExclusionPolicy& policy, const EmbedProviders& providers,
    const EmbedConfig& config);

// Indices of the documents to watermark, ascending.
std::vector<std::size_t> SelectWatermarkedDocuments(std::size_t n,
                                                    double fraction,
                                                    std::uint64_t seed);

std::string SerializeWatermarkLog(std::span<const SubstitutionRecord> records);
absl::StatusOr<std::vector<SubstitutionRecord>> ParseWatermarkLog(
    std::string_view contents);

}  // namespace leximark

#endif  // LEXIMARK_EMBEDDER_H_
