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

#ifndef LEXIMARK_CORPUS_H_
#define LEXIMARK_CORPUS_H_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace leximark {

enum class Label { kUnknown, kMember, kNonmember };

std::string_view LabelName(Label label);
absl::StatusOr<Label> ParseLabel(std::string_view name);

// One corpus record. Text is kept byte-exact; nothing in this module
// normalizes it.
struct Document {
  std::string id;
  std::string text;
  Label label = Label::kUnknown;
  std::map<std::string, std::string> meta;

  friend bool operator==(const Document&, const Document&) = default;
};

// Half-open byte range [start, end) of one sentence within a document.
struct SentenceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::size_t index = 0;

  std::size_t size() const { return end - start; }
  std::string_view View(std::string_view text) const {
    return text.substr(start, end - start);
  }
  friend bool operator==(const SentenceSpan&, const SentenceSpan&) = default;
};

struct WordToken {
  std::string surface;
  std::size_t start = 0;  // byte offsets into the document text
  std::size_t end = 0;
  std::size_t sentence_index = 0;
  std::string normalized;  // lowercased surface

  friend bool operator==(const WordToken&, const WordToken&) = default;
};

// Rule-based splitter. A run of terminators ('.', '!', '?'), optionally
// followed by closing quotes or brackets, ends a sentence when what follows
// is whitespace and then an uppercase letter, or the end of the text. Spans
// are trimmed of surrounding whitespace.
std::vector<SentenceSpan> SplitSentences(std::string_view text);

// Maximal runs of letters and digits; an apostrophe is kept only when it
// sits between two word characters. Hyphens and all other punctuation split.
// Offsets are relative to `text` shifted by `base_offset`.
std::vector<WordToken> TokenizeWords(std::string_view text,
                                     std::size_t base_offset = 0,
                                     std::size_t sentence_index = 0);

// Sentence-by-sentence tokens of a whole document.
struct SentenceTokens {
  SentenceSpan span;
  std::vector<WordToken> tokens;
};
std::vector<SentenceTokens> SegmentDocument(std::string_view text);

// JSONL corpus I/O. Each line is an object with "id", "text", and optional
// "label" and "meta". Top-level fields beyond those are carried into meta
// (non-string values as their JSON text) so nothing is dropped.
absl::StatusOr<Document> ParseDocumentLine(std::string_view line,
                                           std::size_t line_number);
std::string SerializeDocument(const Document& doc);

absl::StatusOr<std::vector<Document>> ParseCorpus(std::string_view contents);
std::string SerializeCorpus(const std::vector<Document>& docs);

absl::StatusOr<std::vector<Document>> LoadCorpus(const std::string& path);
absl::Status SaveCorpus(const std::vector<Document>& docs,
                        const std::string& path);

// Whole-file helpers shared by the loaders.
absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, std::string_view contents);

}  // namespace leximark

#endif  // LEXIMARK_CORPUS_H_
