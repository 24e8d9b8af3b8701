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

#ifndef LEXIMARK_ENTROPY_H_
#define LEXIMARK_ENTROPY_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"
#include "absl/status/statusor.h"
#include "leximark/corpus.h"

namespace leximark {

// -log2(1e-9): the self-information assigned to out-of-vocabulary words.
inline constexpr double kDefaultOovEntropyCap = 29.897352853986263;

// Word -> unigram probability. Keys are stored lowercased, so lookups are
// case-insensitive. Immutable once built; safe to share across threads.
class FrequencyTable {
 public:
  FrequencyTable() = default;
  explicit FrequencyTable(double oov_entropy_cap)
      : oov_entropy_cap_(oov_entropy_cap) {}

  // Returns InvalidArgument unless 0 < probability <= 1. Re-adding a word
  // overwrites it; the return value reports whether that happened.
  absl::StatusOr<bool> Add(std::string_view word, double probability);

  std::optional<double> Probability(std::string_view word) const;
  bool Contains(std::string_view word) const {
    return Probability(word).has_value();
  }

  // Self-information in bits, -log2 p(w), or the OOV cap.
  double Entropy(std::string_view word) const;

  double oov_entropy_cap() const { return oov_entropy_cap_; }
  std::size_t size() const { return entries_.size(); }
  const absl::flat_hash_map<std::string, double>& entries() const {
    return entries_;
  }

 private:
  absl::flat_hash_map<std::string, double> entries_;
  double oov_entropy_cap_ = kDefaultOovEntropyCap;
};

struct FrequencyTableLoad {
  FrequencyTable table;
  std::size_t duplicates = 0;
};

// TSV "word<TAB>probability" lines; blank lines and '#' comments skipped.
absl::StatusOr<FrequencyTableLoad> ParseFrequencyTable(
    std::string_view contents, double oov_entropy_cap = kDefaultOovEntropyCap);
absl::StatusOr<FrequencyTableLoad> LoadFrequencyTable(
    const std::string& path, double oov_entropy_cap = kDefaultOovEntropyCap);

double WordEntropy(const FrequencyTable& table, std::string_view word);

// Decides whether tokens[index] (within one sentence) is a named entity.
using EntityDetector =
    std::function<bool(std::span<const WordToken> tokens, std::size_t index)>;

// Capitalized token that is not the first token of its sentence.
bool CapitalizationEntityHeuristic(std::span<const WordToken> tokens,
                                   std::size_t index);

absl::flat_hash_set<std::string> DefaultFunctionWords();
absl::flat_hash_set<std::string> ParseStoplist(std::string_view contents);
absl::StatusOr<absl::flat_hash_set<std::string>> LoadStoplist(
    const std::string& path);

struct ExclusionPolicy {
  absl::flat_hash_set<std::string> function_words;
  EntityDetector entity_detector;  // empty: no entity exclusion

  // Built-in function-word list plus the capitalization heuristic.
  static ExclusionPolicy Default();
  // Nothing excluded beyond tokens that contain no letter.
  static ExclusionPolicy None();

  bool Excludes(std::span<const WordToken> tokens, std::size_t index) const;
};

struct ScoredKeyword {
  WordToken token;  // first occurrence in the sentence
  double entropy = 0.0;
};

struct KeywordSelection {
  std::size_t sentence_index = 0;
  std::vector<ScoredKeyword> chosen;  // entropy descending, then position
};

// Top-K distinct normalized words of one sentence by entropy. A word is
// ineligible if any of its occurrences is excluded by `policy` or if it
// contains no letter.
KeywordSelection SelectTopK(std::span<const WordToken> tokens,
                            const FrequencyTable& table, std::size_t k,
                            const ExclusionPolicy& policy);

}  // namespace leximark

#endif  // LEXIMARK_ENTROPY_H_
