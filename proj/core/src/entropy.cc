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

#include "leximark/entropy.h"

#include <algorithm>
#include <cmath>

#include "leximark/status_macros.h"
#include "leximark/strings.h"
#include "leximark/utf8.h"

namespace leximark {
namespace internal {
extern const std::string_view kFunctionWordsText;
}  // namespace internal

absl::StatusOr<bool> FrequencyTable::Add(std::string_view word,
                                         double probability) {
  if (!(probability > 0.0 && probability <= 1.0)) {
    return absl::InvalidArgumentError(StrCat(
        "probability for '", word, "' must be in (0, 1], got ", probability));
  }
  if (word.empty()) return absl::InvalidArgumentError("empty word");
  auto [it, inserted] = entries_.insert_or_assign(utf8::Lowercase(word),
                                                  probability);
  return !inserted;
}

std::optional<double> FrequencyTable::Probability(std::string_view word) const {
  auto it = entries_.find(utf8::Lowercase(word));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

double FrequencyTable::Entropy(std::string_view word) const {
  const std::optional<double> p = Probability(word);
  if (!p.has_value()) return oov_entropy_cap_;
  return -std::log2(*p);
}

absl::StatusOr<FrequencyTableLoad> ParseFrequencyTable(
    std::string_view contents, double oov_entropy_cap) {
  FrequencyTableLoad load{FrequencyTable(oov_entropy_cap), 0};
  std::size_t line_number = 0;
  for (std::string_view line : Split(contents, '\n')) {
    ++line_number;
    line = StripTrailingWhitespace(line);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> fields = Split(line, '\t');
    double probability = 0.0;
    if (fields.size() != 2 || fields[0].empty() ||
        !ParseDouble(fields[1], &probability)) {
      return absl::InvalidArgumentError(StrCat(
          "line ", line_number, ": expected 'word<TAB>probability'"));
    }
    auto duplicate = load.table.Add(fields[0], probability);
    if (!duplicate.ok()) {
      return absl::InvalidArgumentError(StrCat(
          "line ", line_number, ": ", duplicate.status().message()));
    }
    if (*duplicate) ++load.duplicates;
  }
  return load;
}

absl::StatusOr<FrequencyTableLoad> LoadFrequencyTable(const std::string& path,
                                                      double oov_entropy_cap) {
  LEXIMARK_ASSIGN_OR_RETURN(std::string contents, ReadFile(path));
  auto load = ParseFrequencyTable(contents, oov_entropy_cap);
  if (!load.ok()) {
    return absl::Status(load.status().code(),
                        StrCat(path, ": ", load.status().message()));
  }
  return load;
}

double WordEntropy(const FrequencyTable& table, std::string_view word) {
  return table.Entropy(word);
}

bool CapitalizationEntityHeuristic(std::span<const WordToken> tokens,
                                   std::size_t index) {
  return index > 0 && utf8::StartsUpper(tokens[index].surface);
}

absl::flat_hash_set<std::string> ParseStoplist(std::string_view contents) {
  absl::flat_hash_set<std::string> words;
  for (std::string_view line : Split(contents, '\n')) {
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = StripWhitespace(line);
    if (!line.empty()) words.insert(utf8::Lowercase(line));
  }
  return words;
}

absl::flat_hash_set<std::string> DefaultFunctionWords() {
  return ParseStoplist(internal::kFunctionWordsText);
}

absl::StatusOr<absl::flat_hash_set<std::string>> LoadStoplist(
    const std::string& path) {
  LEXIMARK_ASSIGN_OR_RETURN(std::string contents, ReadFile(path));
  return ParseStoplist(contents);
}

ExclusionPolicy ExclusionPolicy::Default() {
  return ExclusionPolicy{DefaultFunctionWords(), CapitalizationEntityHeuristic};
}

ExclusionPolicy ExclusionPolicy::None() { return ExclusionPolicy{}; }

bool ExclusionPolicy::Excludes(std::span<const WordToken> tokens,
                               std::size_t index) const {
  const WordToken& token = tokens[index];
  if (function_words.contains(token.normalized)) return true;
  return entity_detector && entity_detector(tokens, index);
}

namespace {

bool ContainsLetter(std::string_view word) {
  std::size_t pos = 0;
  while (pos < word.size()) {
    const utf8::CodePoint cp = utf8::Decode(word, pos);
    if (cp.value != utf8::kReplacementChar && utf8::IsLetter(cp.value)) {
      return true;
    }
    pos += cp.length;
  }
  return false;
}

}  // namespace

KeywordSelection SelectTopK(std::span<const WordToken> tokens,
                            const FrequencyTable& table, std::size_t k,
                            const ExclusionPolicy& policy) {
  KeywordSelection selection;
  if (!tokens.empty()) selection.sentence_index = tokens.front().sentence_index;

  absl::flat_hash_set<std::string> excluded;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!ContainsLetter(tokens[i].surface) || policy.Excludes(tokens, i)) {
      excluded.insert(tokens[i].normalized);
    }
  }

  absl::flat_hash_set<std::string> seen;
  std::vector<ScoredKeyword> candidates;
  for (const WordToken& token : tokens) {
    if (excluded.contains(token.normalized)) continue;
    if (!seen.insert(token.normalized).second) continue;
    candidates.push_back({token, table.Entropy(token.normalized)});
  }
  // Candidates are in sentence order, so a stable sort breaks ties by
  // position.
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const ScoredKeyword& a, const ScoredKeyword& b) {
                     return a.entropy > b.entropy;
                   });
  if (candidates.size() > k) candidates.resize(k);
  selection.chosen = std::move(candidates);
  return selection;
}

}  // namespace leximark
