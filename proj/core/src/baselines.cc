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

#include "leximark/baselines.h"

#include <algorithm>

#include "json.hpp"
#include "leximark/random.h"
#include "leximark/status_macros.h"
#include "leximark/strings.h"
#include "leximark/utf8.h"

namespace leximark {
namespace {

using nlohmann::json;

std::size_t EscapeRun(std::string_view text, std::size_t pos,
                      std::size_t* end) {
  std::size_t run = 0;
  while (pos < text.size()) {
    const utf8::CodePoint cp = utf8::Decode(text, pos);
    if (cp.value != kHomoglyphEscape) break;
    ++run;
    pos += cp.length;
  }
  *end = pos;
  return run;
}

void AppendEscapes(std::string& out, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) utf8::Append(out, kHomoglyphEscape);
}

bool IsInvalidByte(std::string_view text, std::size_t pos,
                   const utf8::CodePoint& cp) {
  return cp.value == utf8::kReplacementChar && cp.length == 1 &&
         static_cast<unsigned char>(text[pos]) >= 0x80;
}

std::string CaseLike(std::string_view surface, std::string_view replacement) {
  return utf8::StartsUpper(surface) ? utf8::CapitalizeFirst(replacement)
                                    : std::string(replacement);
}

std::uint64_t DocumentStream(std::uint64_t seed, std::string_view doc_id) {
  return DeriveSeed(seed, {Fnv1a64(doc_id)});
}

struct Edit {
  std::size_t start;
  std::size_t end;
  std::string text;
};

std::string ApplyEdits(std::string_view text, std::vector<Edit> edits) {
  std::sort(edits.begin(), edits.end(),
            [](const Edit& a, const Edit& b) { return a.start < b.start; });
  std::string out;
  std::size_t cursor = 0;
  for (const Edit& edit : edits) {
    out.append(text.substr(cursor, edit.start - cursor));
    out.append(edit.text);
    cursor = edit.end;
  }
  out.append(text.substr(cursor));
  return out;
}

}  // namespace

HomoglyphMap HomoglyphMap::Default() {
  static constexpr std::pair<char32_t, char32_t> kPairs[] = {
      {'a', 0x0430}, {'c', 0x0441}, {'e', 0x0435}, {'o', 0x043E},
      {'p', 0x0440}, {'x', 0x0445}, {'y', 0x0443},
  };
  return *FromPairs(kPairs);
}

absl::StatusOr<HomoglyphMap> HomoglyphMap::FromPairs(
    std::span<const std::pair<char32_t, char32_t>> pairs) {
  HomoglyphMap map;
  for (const auto& [ascii, glyph] : pairs) {
    if (ascii >= 0x80) {
      return absl::InvalidArgumentError("homoglyph source must be ASCII");
    }
    if (glyph < 0x80 || glyph > 0x10FFFF || glyph == kHomoglyphEscape ||
        (glyph >= 0xD800 && glyph <= 0xDFFF)) {
      return absl::InvalidArgumentError(
          StrCat("homoglyph target U+", absl::Hex(glyph),
                       " must be a non-ASCII scalar value"));
    }
    if (!map.forward_.emplace(ascii, glyph).second) {
      return absl::InvalidArgumentError(StrCat(
          "homoglyph source '", std::string(1, static_cast<char>(ascii)),
          "' mapped twice"));
    }
    if (!map.reverse_.emplace(glyph, ascii).second) {
      return absl::InvalidArgumentError(StrCat(
          "homoglyph target U+", absl::Hex(glyph), " used twice"));
    }
  }
  return map;
}

absl::StatusOr<HomoglyphMap> HomoglyphMap::Parse(std::string_view contents) {
  std::vector<std::pair<char32_t, char32_t>> pairs;
  std::size_t line_number = 0;
  for (std::string_view line : Split(contents, '\n')) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> fields = Split(line, '\t');
    std::string_view hex =
        fields.size() == 2 ? StripWhitespace(fields[1]) : "";
    if ((hex.size() >= 2 && EqualsIgnoreCase(hex.substr(0, 2), "U+"))) hex.remove_prefix(2);
    std::uint32_t code = 0;
    if (fields.size() != 2 || fields[0].size() != 1 ||
        !ParseHex(hex, &code)) {
      return absl::InvalidArgumentError(StrCat(
          "line ", line_number, ": expected 'ascii<TAB>codepoint-hex'"));
    }
    pairs.emplace_back(static_cast<unsigned char>(fields[0][0]), code);
  }
  return FromPairs(pairs);
}

absl::StatusOr<HomoglyphMap> HomoglyphMap::Load(const std::string& path) {
  LEXIMARK_ASSIGN_OR_RETURN(std::string contents, ReadFile(path));
  return Parse(contents);
}

std::optional<char32_t> HomoglyphMap::Forward(char32_t ascii) const {
  auto it = forward_.find(ascii);
  if (it == forward_.end()) return std::nullopt;
  return it->second;
}

std::optional<char32_t> HomoglyphMap::Reverse(char32_t glyph) const {
  auto it = reverse_.find(glyph);
  if (it == reverse_.end()) return std::nullopt;
  return it->second;
}

// Encoding: mapped ASCII -> glyph; pre-existing glyph -> glyph + ESC;
// pre-existing ESC -> ESC ESC. After a glyph an odd escape run marks a
// literal glyph, an even one a substituted ASCII character.
std::string WatermarkUnicode(std::string_view text, const HomoglyphMap& map) {
  std::string out;
  out.reserve(text.size() + text.size() / 4);
  std::size_t pos = 0;
  while (pos < text.size()) {
    const utf8::CodePoint cp = utf8::Decode(text, pos);
    if (IsInvalidByte(text, pos, cp)) {
      out.push_back(text[pos]);
    } else if (auto glyph = map.Forward(cp.value)) {
      utf8::Append(out, *glyph);
    } else if (map.Reverse(cp.value)) {
      utf8::Append(out, cp.value);
      utf8::Append(out, kHomoglyphEscape);
    } else if (cp.value == kHomoglyphEscape) {
      AppendEscapes(out, 2);
    } else {
      out.append(text.substr(pos, cp.length));
    }
    pos += cp.length;
  }
  return out;
}

std::string RemoveUnicode(std::string_view text, const HomoglyphMap& map) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const utf8::CodePoint cp = utf8::Decode(text, pos);
    if (IsInvalidByte(text, pos, cp)) {
      out.push_back(text[pos]);
      pos += 1;
      continue;
    }
    if (auto ascii = map.Reverse(cp.value)) {
      std::size_t next = 0;
      const std::size_t run = EscapeRun(text, pos + cp.length, &next);
      if (run % 2 == 1) {
        utf8::Append(out, cp.value);
        AppendEscapes(out, (run - 1) / 2);
      } else {
        out.push_back(static_cast<char>(*ascii));
        AppendEscapes(out, run / 2);
      }
      pos = next;
      continue;
    }
    if (cp.value == kHomoglyphEscape) {
      std::size_t next = 0;
      const std::size_t run = EscapeRun(text, pos, &next);
      AppendEscapes(out, (run + 1) / 2);
      pos = next;
      continue;
    }
    out.append(text.substr(pos, cp.length));
    pos += cp.length;
  }
  return out;
}

RandomSequenceResult WatermarkRandomSequence(const Document& doc,
                                             std::uint64_t seed,
                                             std::size_t length,
                                             std::size_t count) {
  static constexpr std::string_view kAlphabet =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
  Rng rng(DocumentStream(seed, doc.id));

  std::vector<std::size_t> boundaries;
  for (const WordToken& token : TokenizeWords(doc.text)) {
    boundaries.push_back(token.start);
  }
  boundaries.push_back(doc.text.size());

  struct Planned {
    std::size_t boundary;
    std::size_t order;
    std::string text;
  };
  std::vector<Planned> planned;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t boundary = boundaries[UniformIndex(rng, boundaries.size())];
    std::string sequence;
    for (std::size_t c = 0; c < length; ++c) {
      sequence.push_back(kAlphabet[UniformIndex(rng, kAlphabet.size())]);
    }
    std::string inserted;
    if (boundary == doc.text.size()) {
      inserted = doc.text.empty() ? sequence : " " + sequence;
    } else {
      inserted = sequence + " ";
    }
    planned.push_back({boundary, i, std::move(inserted)});
  }
  std::sort(planned.begin(), planned.end(),
            [](const Planned& a, const Planned& b) {
              return a.boundary != b.boundary ? a.boundary < b.boundary
                                              : a.order < b.order;
            });

  RandomSequenceResult result;
  result.document = doc;
  std::string& out = result.document.text;
  out.clear();
  std::size_t cursor = 0;
  for (const Planned& p : planned) {
    out.append(doc.text, cursor, p.boundary - cursor);
    cursor = p.boundary;
    result.insertions.push_back({doc.id, out.size(), p.text});
    out.append(p.text);
  }
  out.append(doc.text, cursor, std::string::npos);
  return result;
}

absl::StatusOr<Document> RemoveRandomSequences(
    const Document& doc, std::span<const SequenceInsertion> insertions) {
  std::vector<const SequenceInsertion*> ordered;
  for (const SequenceInsertion& insertion : insertions) {
    if (insertion.doc_id.empty() || insertion.doc_id == doc.id) {
      ordered.push_back(&insertion);
    }
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const SequenceInsertion* a, const SequenceInsertion* b) {
              return a->offset > b->offset;
            });
  Document out = doc;
  for (const SequenceInsertion* insertion : ordered) {
    if (insertion->offset > out.text.size() ||
        out.text.compare(insertion->offset, insertion->text.size(),
                         insertion->text) != 0) {
      return absl::FailedPreconditionError(
          StrCat("document '", doc.id, "': logged sequence '",
                       insertion->text, "' not found at offset ",
                       insertion->offset));
    }
    out.text.erase(insertion->offset, insertion->text.size());
  }
  return out;
}

std::string SerializeInsertions(std::span<const SequenceInsertion> insertions) {
  std::string out;
  for (const SequenceInsertion& insertion : insertions) {
    nlohmann::ordered_json line;
    line["doc_id"] = insertion.doc_id;
    line["offset"] = insertion.offset;
    line["text"] = insertion.text;
    out += line.dump();
    out += '\n';
  }
  return out;
}

absl::StatusOr<std::vector<SequenceInsertion>> ParseInsertions(
    std::string_view contents) {
  std::vector<SequenceInsertion> out;
  std::size_t line_number = 0;
  for (std::string_view line : Split(contents, '\n')) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      const json object = json::parse(line);
      out.push_back({object.at("doc_id").get<std::string>(),
                     object.at("offset").get<std::size_t>(),
                     object.at("text").get<std::string>()});
    } catch (const json::exception& e) {
      return absl::InvalidArgumentError(
          StrCat("line ", line_number, ": ", e.what()));
    }
  }
  return out;
}

absl::StatusOr<AttackResult> AttackRandomSynonyms(
    const Document& doc, const SynonymProvider& provider, std::size_t k,
    std::uint64_t seed, std::size_t top_n) {
  if (k < 1) return absl::InvalidArgumentError("K must be at least 1");
  Rng rng(DocumentStream(seed, doc.id));
  AttackResult result;
  std::vector<Edit> edits;
  for (const SentenceTokens& sentence : SegmentDocument(doc.text)) {
    const std::string_view sentence_text = sentence.span.View(doc.text);
    std::vector<std::size_t> eligible;
    std::vector<std::vector<std::string>> options(sentence.tokens.size());
    for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
      const WordToken& token = sentence.tokens[i];
      if (!utf8::IsAllLetters(token.surface)) continue;
      SynonymQuery query{token.normalized, std::string(sentence_text), i,
                         top_n};
      LEXIMARK_ASSIGN_OR_RETURN(std::vector<SynonymCandidate> candidates,
                                SynonymCandidates(provider, query));
      for (const SynonymCandidate& c : candidates) {
        if (utf8::IsAllLetters(c.word)) {
          options[i].push_back(utf8::Lowercase(c.word));
        }
      }
      if (!options[i].empty()) eligible.push_back(i);
    }
    std::vector<std::size_t> picks =
        SampleIndices(rng, eligible.size(), std::min(k, eligible.size()));
    std::sort(picks.begin(), picks.end());
    for (std::size_t pick : picks) {
      const std::size_t i = eligible[pick];
      const WordToken& token = sentence.tokens[i];
      const std::string& choice = options[i][UniformIndex(rng, options[i].size())];
      edits.push_back({token.start, token.end, CaseLike(token.surface, choice)});
      ++result.replaced;
    }
  }
  result.document = doc;
  result.document.text = ApplyEdits(doc.text, std::move(edits));
  return result;
}

absl::StatusOr<AttackResult> AttackTargeted(const Document& doc,
                                            const FrequencyTable& table,
                                            const SynonymProvider& provider,
                                            std::size_t k, std::size_t top_n) {
  if (k < 1) return absl::InvalidArgumentError("K must be at least 1");
  const ExclusionPolicy none = ExclusionPolicy::None();
  AttackResult result;
  std::vector<Edit> edits;
  for (const SentenceTokens& sentence : SegmentDocument(doc.text)) {
    const std::string_view sentence_text = sentence.span.View(doc.text);
    const KeywordSelection selection =
        SelectTopK(sentence.tokens, table, k, none);
    for (const ScoredKeyword& keyword : selection.chosen) {
      std::size_t index = 0;
      while (sentence.tokens[index].start != keyword.token.start) ++index;
      SynonymQuery query{keyword.token.normalized, std::string(sentence_text),
                         index, top_n};
      LEXIMARK_ASSIGN_OR_RETURN(std::vector<SynonymCandidate> candidates,
                                SynonymCandidates(provider, query));
      std::optional<std::string> best;
      double best_entropy = keyword.entropy;
      for (const SynonymCandidate& c : candidates) {
        if (!utf8::IsAllLetters(c.word)) continue;
        const std::string word = utf8::Lowercase(c.word);
        const double entropy = table.Entropy(word);
        if (entropy < best_entropy) {
          best = word;
          best_entropy = entropy;
        }
      }
      if (!best.has_value()) continue;
      for (const WordToken& token : sentence.tokens) {
        if (token.normalized != keyword.token.normalized) continue;
        edits.push_back({token.start, token.end, CaseLike(token.surface, *best)});
        ++result.replaced;
      }
    }
  }
  result.document = doc;
  result.document.text = ApplyEdits(doc.text, std::move(edits));
  return result;
}

absl::StatusOr<AttackResult> RunAttack(const Document& doc,
                                       const AttackConfig& config,
                                       const FrequencyTable& table,
                                       const SynonymProvider& provider) {
  switch (config.mode) {
    case AttackMode::kRandomSynonym:
      return AttackRandomSynonyms(doc, provider, config.k, config.seed,
                                  config.top_n_candidates);
    case AttackMode::kTargetedLowEntropy:
      return AttackTargeted(doc, table, provider, config.k,
                            config.top_n_candidates);
  }
  return absl::InvalidArgumentError("unknown attack mode");
}

absl::StatusOr<WatermarkStep> LexicalWatermarker::Apply(const Document& doc) {
  LEXIMARK_ASSIGN_OR_RETURN(
      DocumentEmbedResult result,
      EmbedDocument(doc, table_, policy_, providers_, config_, cache_));
  WatermarkStep step;
  step.watermarker = std::string(name());
  step.document = std::move(result.document);
  step.substitutions = std::move(result.records);
  return step;
}

absl::StatusOr<WatermarkStep> UnicodeWatermarker::Apply(const Document& doc) {
  WatermarkStep step;
  step.watermarker = std::string(name());
  step.document = doc;
  step.document.text = WatermarkUnicode(doc.text, map_);
  return step;
}

absl::StatusOr<WatermarkStep> RandomSequenceWatermarker::Apply(
    const Document& doc) {
  RandomSequenceResult result =
      WatermarkRandomSequence(doc, seed_, length_, count_);
  WatermarkStep step;
  step.watermarker = std::string(name());
  step.document = std::move(result.document);
  step.insertions = std::move(result.insertions);
  return step;
}

absl::StatusOr<CombinedResult> Combine(const Document& doc,
                                       std::span<Watermarker* const> pipeline) {
  if (pipeline.empty()) {
    return absl::InvalidArgumentError("watermark pipeline is empty");
  }
  CombinedResult result;
  result.document = doc;
  for (Watermarker* watermarker : pipeline) {
    LEXIMARK_ASSIGN_OR_RETURN(WatermarkStep step,
                              watermarker->Apply(result.document));
    result.document = step.document;
    result.steps.push_back(std::move(step));
  }
  return result;
}

}  // namespace leximark
