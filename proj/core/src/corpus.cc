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

#include "leximark/corpus.h"

#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "leximark/status_macros.h"
#include "leximark/strings.h"
#include "leximark/utf8.h"
#include "json.hpp"

namespace leximark {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

bool IsTerminator(char32_t cp) { return cp == '.' || cp == '!' || cp == '?'; }

bool IsCloser(char32_t cp) {
  switch (cp) {
    case '"':
    case '\'':
    case ')':
    case ']':
    case '}':
    case 0x2019:  // right single quote
    case 0x201D:  // right double quote
    case 0x00BB:  // right guillemet
      return true;
    default:
      return false;
  }
}

bool IsOpener(char32_t cp) {
  switch (cp) {
    case '"':
    case '\'':
    case '(':
    case '[':
    case 0x2018:
    case 0x201C:
    case 0x00AB:
      return true;
    default:
      return false;
  }
}

std::size_t SkipWhitespace(std::string_view text, std::size_t pos) {
  while (pos < text.size()) {
    const utf8::CodePoint cp = utf8::Decode(text, pos);
    if (!utf8::IsWhitespace(cp.value)) break;
    pos += cp.length;
  }
  return pos;
}

// End of the last non-whitespace code point in [begin, end).
std::size_t TrimRight(std::string_view text, std::size_t begin,
                      std::size_t end) {
  std::size_t last = begin;
  std::size_t pos = begin;
  while (pos < end) {
    const utf8::CodePoint cp = utf8::Decode(text, pos);
    pos += cp.length;
    if (!utf8::IsWhitespace(cp.value)) last = pos;
  }
  return last;
}

bool IsWordChar(char32_t cp) {
  return cp != utf8::kReplacementChar &&
         (utf8::IsLetter(cp) || utf8::IsDigit(cp));
}

std::string JsonValueAsMeta(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  return value.dump(-1, ' ', false, json::error_handler_t::replace);
}

}  // namespace

std::string_view LabelName(Label label) {
  switch (label) {
    case Label::kMember:
      return "member";
    case Label::kNonmember:
      return "nonmember";
    case Label::kUnknown:
      break;
  }
  return "unknown";
}

absl::StatusOr<Label> ParseLabel(std::string_view name) {
  if (name == "member" || name == "1") return Label::kMember;
  if (name == "nonmember" || name == "0") return Label::kNonmember;
  if (name == "unknown" || name.empty()) return Label::kUnknown;
  return absl::InvalidArgumentError(StrCat("unknown label '", name, "'"));
}

std::vector<SentenceSpan> SplitSentences(std::string_view text) {
  std::vector<SentenceSpan> spans;
  std::size_t start = SkipWhitespace(text, 0);
  std::size_t pos = start;
  while (pos < text.size()) {
    utf8::CodePoint cp = utf8::Decode(text, pos);
    if (!IsTerminator(cp.value)) {
      pos += cp.length;
      continue;
    }
    std::size_t end = pos;
    while (end < text.size()) {
      cp = utf8::Decode(text, end);
      if (!IsTerminator(cp.value)) break;
      end += cp.length;
    }
    while (end < text.size()) {
      cp = utf8::Decode(text, end);
      if (!IsCloser(cp.value)) break;
      end += cp.length;
    }
    const std::size_t next = SkipWhitespace(text, end);
    bool boundary = false;
    if (next >= text.size()) {
      boundary = true;
    } else if (next > end) {
      std::size_t probe = next;
      cp = utf8::Decode(text, probe);
      while (IsOpener(cp.value) && probe + cp.length < text.size()) {
        probe += cp.length;
        cp = utf8::Decode(text, probe);
      }
      boundary = utf8::IsUpper(cp.value);
    }
    if (boundary) {
      spans.push_back({start, end, spans.size()});
      start = next;
    }
    pos = next > end ? next : end;
  }
  if (start < text.size()) {
    const std::size_t end = TrimRight(text, start, text.size());
    if (end > start) spans.push_back({start, end, spans.size()});
  }
  return spans;
}

std::vector<WordToken> TokenizeWords(std::string_view text,
                                     std::size_t base_offset,
                                     std::size_t sentence_index) {
  std::vector<WordToken> tokens;
  std::size_t pos = 0;
  std::size_t token_start = 0;
  bool in_token = false;
  auto flush = [&](std::size_t end) {
    WordToken token;
    token.surface = std::string(text.substr(token_start, end - token_start));
    token.start = base_offset + token_start;
    token.end = base_offset + end;
    token.sentence_index = sentence_index;
    token.normalized = utf8::Lowercase(token.surface);
    tokens.push_back(std::move(token));
    in_token = false;
  };
  while (pos < text.size()) {
    const utf8::CodePoint cp = utf8::Decode(text, pos);
    if (IsWordChar(cp.value)) {
      if (!in_token) {
        in_token = true;
        token_start = pos;
      }
      pos += cp.length;
      continue;
    }
    if (in_token && utf8::IsApostrophe(cp.value)) {
      const std::size_t after = pos + cp.length;
      if (after < text.size() && IsWordChar(utf8::Decode(text, after).value)) {
        pos = after;
        continue;
      }
    }
    if (in_token) flush(pos);
    pos += cp.length;
  }
  if (in_token) flush(pos);
  return tokens;
}

std::vector<SentenceTokens> SegmentDocument(std::string_view text) {
  std::vector<SentenceTokens> out;
  for (const SentenceSpan& span : SplitSentences(text)) {
    out.push_back({span, TokenizeWords(span.View(text), span.start,
                                       span.index)});
  }
  return out;
}

absl::StatusOr<Document> ParseDocumentLine(std::string_view line,
                                           std::size_t line_number) {
  json object;
  try {
    object = json::parse(line);
  } catch (const json::parse_error& e) {
    return absl::InvalidArgumentError(
        StrCat("line ", line_number, ": malformed JSON: ", e.what()));
  }
  if (!object.is_object()) {
    return absl::InvalidArgumentError(
        StrCat("line ", line_number, ": expected a JSON object"));
  }
  Document doc;
  auto id = object.find("id");
  if (id == object.end() || !id->is_string() ||
      id->get<std::string>().empty()) {
    return absl::InvalidArgumentError(
        StrCat("line ", line_number, ": missing or empty string 'id'"));
  }
  doc.id = id->get<std::string>();
  auto text = object.find("text");
  if (text == object.end() || !text->is_string()) {
    return absl::InvalidArgumentError(
        StrCat("line ", line_number, ": missing string 'text'"));
  }
  doc.text = text->get<std::string>();
  for (auto it = object.begin(); it != object.end(); ++it) {
    const std::string& key = it.key();
    if (key == "id" || key == "text") continue;
    if (key == "label") {
      std::string name;
      if (it->is_string()) {
        name = it->get<std::string>();
      } else if (it->is_number_integer()) {
        name = std::to_string(it->get<long long>());
      } else if (!it->is_null()) {
        return absl::InvalidArgumentError(
            StrCat("line ", line_number, ": 'label' must be a string"));
      }
      auto label = ParseLabel(name);
      if (!label.ok()) {
        return absl::InvalidArgumentError(StrCat(
            "line ", line_number, ": ", label.status().message()));
      }
      doc.label = *label;
    } else if (key == "meta") {
      if (!it->is_object()) {
        return absl::InvalidArgumentError(
            StrCat("line ", line_number, ": 'meta' must be an object"));
      }
      for (auto m = it->begin(); m != it->end(); ++m) {
        doc.meta[m.key()] = JsonValueAsMeta(m.value());
      }
    } else {
      doc.meta[key] = JsonValueAsMeta(it.value());
    }
  }
  return doc;
}

std::string SerializeDocument(const Document& doc) {
  ordered_json object;
  object["id"] = doc.id;
  object["text"] = doc.text;
  if (doc.label != Label::kUnknown) {
    object["label"] = std::string(LabelName(doc.label));
  }
  if (!doc.meta.empty()) {
    ordered_json meta = ordered_json::object();
    for (const auto& [key, value] : doc.meta) meta[key] = value;
    object["meta"] = std::move(meta);
  }
  return object.dump(-1, ' ', false, ordered_json::error_handler_t::replace);
}

absl::StatusOr<std::vector<Document>> ParseCorpus(std::string_view contents) {
  std::vector<Document> docs;
  std::map<std::string, std::size_t, std::less<>> seen;
  std::size_t line_number = 0;
  for (std::string_view line : Split(contents, '\n')) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    LEXIMARK_ASSIGN_OR_RETURN(Document doc,
                              ParseDocumentLine(line, line_number));
    auto [it, inserted] = seen.emplace(doc.id, line_number);
    if (!inserted) {
      return absl::InvalidArgumentError(
          StrCat("line ", line_number, ": duplicate id '", doc.id,
                       "' (first seen on line ", it->second, ")"));
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::string SerializeCorpus(const std::vector<Document>& docs) {
  std::string out;
  for (const Document& doc : docs) {
    out += SerializeDocument(doc);
    out += '\n';
  }
  return out;
}

absl::StatusOr<std::vector<Document>> LoadCorpus(const std::string& path) {
  LEXIMARK_ASSIGN_OR_RETURN(std::string contents, ReadFile(path));
  auto docs = ParseCorpus(contents);
  if (!docs.ok()) {
    return absl::Status(docs.status().code(),
                        StrCat(path, ": ", docs.status().message()));
  }
  return docs;
}

absl::Status SaveCorpus(const std::vector<Document>& docs,
                        const std::string& path) {
  return WriteFile(path, SerializeCorpus(docs));
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(StrCat("cannot open ", path));
  std::string contents((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
  if (in.bad()) return absl::DataLossError(StrCat("read failed: ", path));
  return contents;
}

absl::Status WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::PermissionDeniedError(StrCat("cannot write ", path));
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) return absl::DataLossError(StrCat("write failed: ", path));
  return absl::OkStatus();
}

}  // namespace leximark
