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

#ifndef LEXIMARK_WORDNET_H_
#define LEXIMARK_WORDNET_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"

namespace leximark {

enum class PartOfSpeech { kNoun, kVerb, kAdjective, kAdverb };

std::string_view PosName(PartOfSpeech pos);
absl::StatusOr<PartOfSpeech> ParsePos(std::string_view name);

struct SynsetEntry {
  std::uint64_t offset = 0;
  PartOfSpeech pos = PartOfSpeech::kNoun;
  // Lowercased; WNDB underscores become spaces so multiword lemmas stay
  // recognizable.
  std::vector<std::string> lemmas;
};

// Normalized word -> ordered, de-duplicated synonym candidates. A word is
// never listed as its own candidate.
class Lexicon {
 public:
  // Appends candidates for `word`, skipping the word itself and duplicates.
  void Add(std::string_view word, std::span<const std::string> candidates);

  // Empty span when the word is unknown.
  std::span<const std::string> Candidates(std::string_view word) const;

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

 private:
  absl::flat_hash_map<std::string, std::vector<std::string>> entries_;
};

// Parses the contents of one WNDB data.<pos> file. `source` names the file in
// error messages. License header lines (leading two spaces) are skipped.
absl::StatusOr<std::vector<SynsetEntry>> ParseWndbData(
    std::string_view contents, PartOfSpeech pos, std::string_view source);

// Reads data.noun, data.verb, data.adj and data.adv from `dir`, in that
// order. Missing files are skipped; a directory with none of them is an
// error.
absl::StatusOr<std::vector<SynsetEntry>> ParseWndb(const std::string& dir);

// Co-lemma union across all synsets containing each word. Multiword lemmas
// are dropped. With `pos_filter`, only synsets of that part of speech count.
Lexicon BuildLexicon(std::span<const SynsetEntry> synsets,
                     std::optional<PartOfSpeech> pos_filter = std::nullopt);

struct TsvLexiconLoad {
  Lexicon lexicon;
  std::size_t omitted = 0;  // lines whose candidate list ended up empty
};

// Lines "word<TAB>syn1,syn2,...".
absl::StatusOr<TsvLexiconLoad> ParseTsvLexicon(std::string_view contents);
absl::StatusOr<TsvLexiconLoad> LoadTsvLexicon(const std::string& path);

}  // namespace leximark

#endif  // LEXIMARK_WORDNET_H_
