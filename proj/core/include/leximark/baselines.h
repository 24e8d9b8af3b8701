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

#ifndef LEXIMARK_BASELINES_H_
#define LEXIMARK_BASELINES_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "leximark/corpus.h"
#include "leximark/embedder.h"
#include "leximark/entropy.h"
#include "leximark/providers.h"

namespace leximark {

// ---------------------------------------------------------------------------
// Unicode homoglyph watermark
// ---------------------------------------------------------------------------

// Injective map from ASCII characters to look-alike code points.
class HomoglyphMap {
 public:
  // a c e o p x y -> Cyrillic а с е о р х у.
  static HomoglyphMap Default();
  static absl::StatusOr<HomoglyphMap> FromPairs(
      std::span<const std::pair<char32_t, char32_t>> pairs);
  // TSV lines "ascii<TAB>codepoint-hex", e.g. "a\t0430".
  static absl::StatusOr<HomoglyphMap> Parse(std::string_view contents);
  static absl::StatusOr<HomoglyphMap> Load(const std::string& path);

  std::optional<char32_t> Forward(char32_t ascii) const;
  std::optional<char32_t> Reverse(char32_t glyph) const;
  std::size_t size() const { return forward_.size(); }

 private:
  absl::flat_hash_map<char32_t, char32_t> forward_;
  absl::flat_hash_map<char32_t, char32_t> reverse_;
};

// Marks look-alikes that were already present in the input (U+FDD0 is a
// noncharacter, so it never appears in interchanged text).
inline constexpr char32_t kHomoglyphEscape = 0xFDD0;

// Replaces every mapped ASCII character by its look-alike. Look-alikes and
// escape characters already in the text are escaped so that RemoveUnicode is
// an exact inverse on every input.
std::string WatermarkUnicode(std::string_view text, const HomoglyphMap& map);
std::string RemoveUnicode(std::string_view text, const HomoglyphMap& map);

// ---------------------------------------------------------------------------
// Random-sequence watermark
// ---------------------------------------------------------------------------

struct SequenceInsertion {
  std::string doc_id;
  std::size_t offset = 0;  // byte offset in the watermarked text
  std::string text;        // inserted bytes, separator included

  friend bool operator==(const SequenceInsertion&,
                         const SequenceInsertion&) = default;
};

struct RandomSequenceResult {
  Document document;
  std::vector<SequenceInsertion> insertions;
};

// Inserts `count` seeded alphanumeric sequences of `length` characters at
// seeded word boundaries. The stream is keyed by (seed, document id).
RandomSequenceResult WatermarkRandomSequence(const Document& doc,
                                             std::uint64_t seed,
                                             std::size_t length = 10,
                                             std::size_t count = 1);

// Deletes logged insertions (latest offset first). Fails if the logged bytes
// are not found where recorded.
absl::StatusOr<Document> RemoveRandomSequences(
    const Document& doc, std::span<const SequenceInsertion> insertions);

std::string SerializeInsertions(std::span<const SequenceInsertion> insertions);
absl::StatusOr<std::vector<SequenceInsertion>> ParseInsertions(
    std::string_view contents);

// ---------------------------------------------------------------------------
// Removal attacks
// ---------------------------------------------------------------------------

enum class AttackMode { kRandomSynonym, kTargetedLowEntropy };

struct AttackConfig {
  AttackMode mode = AttackMode::kRandomSynonym;
  std::size_t k = 5;
  std::uint64_t seed = 0;
  std::size_t top_n_candidates = 10;
};

struct AttackResult {
  Document document;
  std::size_t replaced = 0;  // occurrences rewritten
};

// Per sentence, replaces up to K randomly drawn word occurrences that have
// candidates with a randomly drawn candidate.
absl::StatusOr<AttackResult> AttackRandomSynonyms(
    const Document& doc, const SynonymProvider& provider, std::size_t k,
    std::uint64_t seed, std::size_t top_n = 10);

// Per sentence, takes the top-K entropy words (no exclusions) and swaps each
// for its lowest-entropy candidate when that is strictly lower.
absl::StatusOr<AttackResult> AttackTargeted(const Document& doc,
                                            const FrequencyTable& table,
                                            const SynonymProvider& provider,
                                            std::size_t k,
                                            std::size_t top_n = 10);

absl::StatusOr<AttackResult> RunAttack(const Document& doc,
                                       const AttackConfig& config,
                                       const FrequencyTable& table,
                                       const SynonymProvider& provider);

// ---------------------------------------------------------------------------
// Composition
// ---------------------------------------------------------------------------

struct WatermarkStep {
  std::string watermarker;
  Document document;
  std::vector<SubstitutionRecord> substitutions;
  std::vector<SequenceInsertion> insertions;
};

class Watermarker {
 public:
  virtual ~Watermarker() = default;
  virtual std::string_view name() const = 0;
  virtual absl::StatusOr<WatermarkStep> Apply(const Document& doc) = 0;
};

// Lexical-substitution watermark over one shared cache.
class LexicalWatermarker final : public Watermarker {
 public:
  LexicalWatermarker(const FrequencyTable& table, ExclusionPolicy policy,
                     EmbedProviders providers, EmbedConfig config)
      : table_(table),
        policy_(std::move(policy)),
        providers_(providers),
        config_(config) {}

  std::string_view name() const override { return "leximark"; }
  absl::StatusOr<WatermarkStep> Apply(const Document& doc) override;

 private:
  const FrequencyTable& table_;
  ExclusionPolicy policy_;
  EmbedProviders providers_;
  EmbedConfig config_;
  SubstitutionCache cache_;
};

class UnicodeWatermarker final : public Watermarker {
 public:
  explicit UnicodeWatermarker(HomoglyphMap map) : map_(std::move(map)) {}
  std::string_view name() const override { return "unicode"; }
  absl::StatusOr<WatermarkStep> Apply(const Document& doc) override;

 private:
  HomoglyphMap map_;
};

class RandomSequenceWatermarker final : public Watermarker {
 public:
  RandomSequenceWatermarker(std::uint64_t seed, std::size_t length = 10,
                            std::size_t count = 1)
      : seed_(seed), length_(length), count_(count) {}
  std::string_view name() const override { return "randomseq"; }
  absl::StatusOr<WatermarkStep> Apply(const Document& doc) override;

 private:
  std::uint64_t seed_;
  std::size_t length_;
  std::size_t count_;
};

struct CombinedResult {
  Document document;
  std::vector<WatermarkStep> steps;  // one per watermarker, in order
};

// Applies the watermarkers in order, feeding each the previous output.
absl::StatusOr<CombinedResult> Combine(const Document& doc,
                                       std::span<Watermarker* const> pipeline);

}  // namespace leximark

#endif  // LEXIMARK_BASELINES_H_
