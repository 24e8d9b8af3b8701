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

#include "leximark/wordnet.h"

#include <algorithm>
#include <filesystem>

#include "absl/container/flat_hash_set.h"
#include "absl/strings/ascii.h"
#include "absl/strings/str_replace.h"
#include "leximark/corpus.h"
#include "leximark/status_macros.h"
#include "leximark/strings.h"
#include "leximark/utf8.h"

namespace leximark {
namespace {

bool ParseHexField(std::string_view field, std::size_t* out) {
  if (field.empty()) return false;
  std::size_t value = 0;
  for (char c : field) {
    int digit;
    if (c >= '0' && c <= '9') {
      digit = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      digit = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      digit = c - 'A' + 10;
    } else {
      return false;
    }
    value = value * 16 + static_cast<std::size_t>(digit);
  }
  *out = value;
  return true;
}

bool ParseDecimal(std::string_view field, std::size_t* out) {
  if (field.empty() ||
      !std::all_of(field.begin(), field.end(), absl::ascii_isdigit)) {
    return false;
  }
  return ParseSize(field, out);
}

bool SsTypeMatches(std::string_view ss_type, PartOfSpeech pos) {
  switch (pos) {
    case PartOfSpeech::kNoun:
      return ss_type == "n";
    case PartOfSpeech::kVerb:
      return ss_type == "v";
    case PartOfSpeech::kAdjective:
      return ss_type == "a" || ss_type == "s";
    case PartOfSpeech::kAdverb:
      return ss_type == "r";
  }
  return false;
}

// data.adj words may carry a syntactic marker: "(a)", "(p)" or "(ip)".
std::string_view StripAdjectiveMarker(std::string_view word) {
  for (std::string_view marker : {"(a)", "(p)", "(ip)"}) {
    if (word.ends_with(marker)) {
      word.remove_suffix(marker.size());
      break;
    }
  }
  return word;
}

std::string NormalizeLemma(std::string_view lemma) {
  return utf8::Lowercase(ReplaceAll(lemma, "_", " "));
}

}  // namespace

std::string_view PosName(PartOfSpeech pos) {
  switch (pos) {
    case PartOfSpeech::kNoun:
      return "noun";
    case PartOfSpeech::kVerb:
      return "verb";
    case PartOfSpeech::kAdjective:
      return "adj";
    case PartOfSpeech::kAdverb:
      return "adv";
  }
  return "noun";
}

absl::StatusOr<PartOfSpeech> ParsePos(std::string_view name) {
  if (name == "noun" || name == "n") return PartOfSpeech::kNoun;
  if (name == "verb" || name == "v") return PartOfSpeech::kVerb;
  if (name == "adj" || name == "a" || name == "s") {
    return PartOfSpeech::kAdjective;
  }
  if (name == "adv" || name == "r") return PartOfSpeech::kAdverb;
  return absl::InvalidArgumentError(
      StrCat("unknown part of speech '", name, "'"));
}

void Lexicon::Add(std::string_view word,
                  std::span<const std::string> candidates) {
  const std::string key = utf8::Lowercase(word);
  std::vector<std::string>& list = entries_[key];
  for (const std::string& raw : candidates) {
    std::string candidate = utf8::Lowercase(raw);
    if (candidate.empty() || candidate == key) continue;
    if (std::find(list.begin(), list.end(), candidate) != list.end()) continue;
    list.push_back(std::move(candidate));
  }
  if (list.empty()) entries_.erase(key);
}

std::span<const std::string> Lexicon::Candidates(std::string_view word) const {
  auto it = entries_.find(utf8::Lowercase(word));
  if (it == entries_.end()) return {};
  return it->second;
}

absl::StatusOr<std::vector<SynsetEntry>> ParseWndbData(
    std::string_view contents, PartOfSpeech pos, std::string_view source) {
  std::vector<SynsetEntry> entries;
  std::size_t line_number = 0;
  for (std::string_view line : Split(contents, '\n')) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.starts_with("  ")) continue;  // license header
    if (StripWhitespace(line).empty()) continue;

    auto error = [&](std::string_view what) {
      return absl::InvalidArgumentError(
          StrCat(source, ":", line_number, ": ", what));
    };

    std::string_view fields_part = line;
    const std::size_t bar = line.find(" | ");
    if (bar != std::string_view::npos) {
      fields_part = line.substr(0, bar);
    } else if (StripTrailingWhitespace(line).ends_with("|")) {
      fields_part = StripTrailingWhitespace(line);
      fields_part.remove_suffix(1);
    }
    std::vector<std::string_view> fields =
        SplitSkipEmpty(fields_part, " ");
    if (fields.size() < 6) return error("too few fields");

    SynsetEntry entry;
    entry.pos = pos;
    std::size_t offset = 0;
    std::size_t lex_filenum = 0;
    if (!ParseDecimal(fields[0], &offset)) return error("bad synset offset");
    if (!ParseDecimal(fields[1], &lex_filenum)) return error("bad lex_filenum");
    entry.offset = offset;
    if (!SsTypeMatches(fields[2], pos)) {
      return error(StrCat("ss_type '", fields[2], "' does not match ",
                                PosName(pos)));
    }
    std::size_t word_count = 0;
    if (!ParseHexField(fields[3], &word_count) || word_count == 0) {
      return error("bad w_cnt");
    }
    std::size_t cursor = 4;
    if (fields.size() < cursor + 2 * word_count + 1) {
      return error("field count does not match w_cnt");
    }
    for (std::size_t i = 0; i < word_count; ++i) {
      std::string_view word = fields[cursor];
      std::size_t lex_id = 0;
      if (!ParseHexField(fields[cursor + 1], &lex_id)) return error("bad lex_id");
      if (pos == PartOfSpeech::kAdjective) word = StripAdjectiveMarker(word);
      entry.lemmas.push_back(NormalizeLemma(word));
      cursor += 2;
    }
    std::size_t pointer_count = 0;
    if (!ParseDecimal(fields[cursor], &pointer_count)) {
      return error("bad p_cnt");
    }
    cursor += 1 + 4 * pointer_count;
    if (pos == PartOfSpeech::kVerb) {
      std::size_t frame_count = 0;
      if (cursor >= fields.size() ||
          !ParseDecimal(fields[cursor], &frame_count)) {
        return error("bad f_cnt");
      }
      cursor += 1 + 3 * frame_count;
    }
    if (cursor != fields.size()) {
      return error(StrCat("expected ", cursor, " fields, found ",
                                fields.size()));
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

absl::StatusOr<std::vector<SynsetEntry>> ParseWndb(const std::string& dir) {
  static constexpr std::pair<std::string_view, PartOfSpeech> kFiles[] = {
      {"data.noun", PartOfSpeech::kNoun},
      {"data.verb", PartOfSpeech::kVerb},
      {"data.adj", PartOfSpeech::kAdjective},
      {"data.adv", PartOfSpeech::kAdverb},
  };
  std::vector<SynsetEntry> all;
  bool found = false;
  for (const auto& [name, pos] : kFiles) {
    const std::filesystem::path path = std::filesystem::path(dir) / name;
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) continue;
    found = true;
    LEXIMARK_ASSIGN_OR_RETURN(std::string contents, ReadFile(path.string()));
    LEXIMARK_ASSIGN_OR_RETURN(std::vector<SynsetEntry> entries,
                              ParseWndbData(contents, pos, path.string()));
    std::move(entries.begin(), entries.end(), std::back_inserter(all));
  }
  if (!found) {
    return absl::NotFoundError(
        StrCat("no WNDB data.* files found in ", dir));
  }
  return all;
}

Lexicon BuildLexicon(std::span<const SynsetEntry> synsets,
                     std::optional<PartOfSpeech> pos_filter) {
  Lexicon lexicon;
  for (const SynsetEntry& synset : synsets) {
    if (pos_filter.has_value() && synset.pos != *pos_filter) continue;
    std::vector<std::string> single_words;
    for (const std::string& lemma : synset.lemmas) {
      if (lemma.find(' ') == std::string::npos) single_words.push_back(lemma);
    }
    for (const std::string& word : single_words) {
      lexicon.Add(word, single_words);
    }
  }
  return lexicon;
}

absl::StatusOr<TsvLexiconLoad> ParseTsvLexicon(std::string_view contents) {
  TsvLexiconLoad load;
  std::size_t line_number = 0;
  for (std::string_view line : Split(contents, '\n')) {
    ++line_number;
    line = StripTrailingWhitespace(line);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> fields = Split(line, '\t');
    if (fields.size() != 2 || StripWhitespace(fields[0]).empty()) {
      return absl::InvalidArgumentError(StrCat(
          "line ", line_number, ": expected 'word<TAB>syn1,syn2,...'"));
    }
    const std::string_view word = StripWhitespace(fields[0]);
    std::vector<std::string> candidates;
    for (std::string_view c : Split(fields[1], ',')) {
      c = StripWhitespace(c);
      if (!c.empty()) candidates.emplace_back(c);
    }
    const std::size_t before = load.lexicon.Candidates(word).size();
    load.lexicon.Add(word, candidates);
    if (load.lexicon.Candidates(word).size() == before) ++load.omitted;
  }
  return load;
}

absl::StatusOr<TsvLexiconLoad> LoadTsvLexicon(const std::string& path) {
  LEXIMARK_ASSIGN_OR_RETURN(std::string contents, ReadFile(path));
  auto load = ParseTsvLexicon(contents);
  if (!load.ok()) {
    return absl::Status(load.status().code(),
                        StrCat(path, ": ", load.status().message()));
  }
  return load;
}

}  // namespace leximark
