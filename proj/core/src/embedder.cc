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

#include "leximark/embedder.h"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "leximark/parallel.h"
#include "leximark/random.h"
#include "leximark/status_macros.h"
#include "leximark/strings.h"
#include "leximark/utf8.h"

namespace leximark {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

struct PreparedDocument {
  std::vector<SentenceTokens> sentences;
  std::vector<KeywordSelection> selections;  // parallel to sentences
};

// First occurrence of a word not yet in the cache; its decision is made in
// this sentence's context.
struct DecisionSite {
  std::size_t doc = 0;
  std::size_t sentence = 0;
  std::size_t keyword = 0;
};

SentenceView ViewOf(const Document& doc, const SentenceTokens& sentence) {
  return SentenceView{sentence.span.View(doc.text), sentence.span.start,
                      sentence.tokens};
}

std::size_t TokenIndex(const SentenceTokens& sentence, const WordToken& token) {
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    if (sentence.tokens[i].start == token.start) return i;
  }
  return 0;
}

struct Edit {
  std::size_t start;
  std::size_t end;
  std::string text;
};

std::string ApplyEdits(std::string_view text, std::vector<Edit>& edits) {
  std::sort(edits.begin(), edits.end(),
            [](const Edit& a, const Edit& b) { return a.start < b.start; });
  std::string out;
  out.reserve(text.size() + 16 * edits.size());
  std::size_t cursor = 0;
  for (const Edit& edit : edits) {
    out.append(text.substr(cursor, edit.start - cursor));
    out.append(edit.text);
    cursor = edit.end;
  }
  out.append(text.substr(cursor));
  return out;
}

std::string CaseLike(std::string_view surface, std::string_view replacement) {
  return utf8::StartsUpper(surface) ? utf8::CapitalizeFirst(replacement)
                                    : std::string(replacement);
}

// Core of both EmbedDocument and EmbedCorpus.
absl::StatusOr<std::vector<DocumentEmbedResult>> ProcessDocuments(
    std::span<const Document* const> docs, const FrequencyTable& table,
    const ExclusionPolicy& policy, const EmbedProviders& providers,
    const EmbedConfig& config, SubstitutionCache& cache) {
  LEXIMARK_RETURN_IF_ERROR(config.Validate());
  if (providers.synonyms == nullptr) {
    return absl::FailedPreconditionError("no synonym provider configured");
  }
  if (config.similarity_threshold.has_value() &&
      providers.embeddings == nullptr) {
    return absl::FailedPreconditionError(
        "a similarity threshold needs an embedding provider");
  }

  std::vector<PreparedDocument> prepared(docs.size());
  ParallelFor(docs.size(), config.threads, [&](std::size_t i) {
    PreparedDocument& p = prepared[i];
    p.sentences = SegmentDocument(docs[i]->text);
    for (const SentenceTokens& sentence : p.sentences) {
      p.selections.push_back(
          SelectTopK(sentence.tokens, table, config.k, policy));
    }
  });

  std::vector<DecisionSite> sites;
  absl::flat_hash_map<std::string, std::size_t> site_of_word;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const PreparedDocument& p = prepared[d];
    for (std::size_t s = 0; s < p.selections.size(); ++s) {
      const auto& chosen = p.selections[s].chosen;
      for (std::size_t m = 0; m < chosen.size(); ++m) {
        const std::string& word = chosen[m].token.normalized;
        if (cache.Find(word) != nullptr || site_of_word.contains(word)) {
          continue;
        }
        site_of_word.emplace(word, sites.size());
        sites.push_back({d, s, m});
      }
    }
  }

  std::vector<absl::StatusOr<ReplacementDecision>> decisions(
      sites.size(), absl::UnknownError("not evaluated"));
  ParallelFor(sites.size(), config.threads, [&](std::size_t i) {
    const DecisionSite& site = sites[i];
    const Document& doc = *docs[site.doc];
    const SentenceTokens& sentence = prepared[site.doc].sentences[site.sentence];
    const ScoredKeyword& keyword =
        prepared[site.doc].selections[site.sentence].chosen[site.keyword];
    decisions[i] =
        ChooseReplacement(ViewOf(doc, sentence), keyword,
                          TokenIndex(sentence, keyword.token), table,
                          providers, config);
  });
  for (const auto& decision : decisions) {
    if (!decision.ok()) return decision.status();
  }

  std::vector<DocumentEmbedResult> results(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const Document& doc = *docs[d];
    const PreparedDocument& p = prepared[d];
    DocumentEmbedResult& result = results[d];
    std::vector<Edit> edits;
    for (std::size_t s = 0; s < p.sentences.size(); ++s) {
      const SentenceTokens& sentence = p.sentences[s];
      for (const ScoredKeyword& keyword : p.selections[s].chosen) {
        const std::string& word = keyword.token.normalized;
        const ReplacementDecision* decision = nullptr;
        DecisionSource source = DecisionSource::kCache;
        if (auto it = site_of_word.find(word); it != site_of_word.end()) {
          decision = &*decisions[it->second];
          const DecisionSite& site = sites[it->second];
          if (site.doc == d && site.sentence == s) {
            source = DecisionSource::kFresh;
          }
        } else {
          decision = cache.Find(word);
        }
        if (decision == nullptr || !decision->replacement.has_value()) continue;
        for (const WordToken& token : sentence.tokens) {
          if (token.normalized != word) continue;
          SubstitutionRecord record;
          record.doc_id = doc.id;
          record.sentence_index = sentence.span.index;
          record.start = token.start;
          record.original = token.surface;
          record.replacement = CaseLike(token.surface, *decision->replacement);
          record.original_entropy = decision->original_entropy;
          record.replacement_entropy = decision->replacement_entropy;
          record.source = source;
          if (source == DecisionSource::kFresh) {
            record.similarity = decision->similarity;
          }
          edits.push_back({token.start, token.end, record.replacement});
          result.records.push_back(std::move(record));
        }
      }
    }
    result.document = doc;
    result.document.text = ApplyEdits(doc.text, edits);
  }

  for (std::size_t i = 0; i < sites.size(); ++i) {
    const DecisionSite& site = sites[i];
    cache.Insert(prepared[site.doc]
                     .selections[site.sentence]
                     .chosen[site.keyword]
                     .token.normalized,
                 *std::move(decisions[i]));
  }
  return results;
}

}  // namespace

std::string_view SynonymSourceName(SynonymSource source) {
  switch (source) {
    case SynonymSource::kTsvStub:
      return "tsv";
    case SynonymSource::kWndb:
      return "wndb";
    case SynonymSource::kRemoteConcat:
      return "concat";
    case SynonymSource::kRemoteDropout:
      return "dropout";
  }
  return "tsv";
}

absl::StatusOr<SynonymSource> ParseSynonymSource(std::string_view name) {
  if (name == "tsv") return SynonymSource::kTsvStub;
  if (name == "wndb") return SynonymSource::kWndb;
  if (name == "concat") return SynonymSource::kRemoteConcat;
  if (name == "dropout") return SynonymSource::kRemoteDropout;
  return absl::InvalidArgumentError(
      StrCat("unknown synonym source '", name,
                   "' (expected tsv, wndb, concat or dropout)"));
}

absl::Status EmbedConfig::Validate() const {
  if (k < 1) return absl::InvalidArgumentError("K must be at least 1");
  if (similarity_threshold.has_value() &&
      !(*similarity_threshold >= 0.0 && *similarity_threshold <= 1.0)) {
    return absl::InvalidArgumentError(
        "similarity threshold must be in [0, 1]");
  }
  if (!(watermark_fraction > 0.0 && watermark_fraction <= 1.0)) {
    return absl::InvalidArgumentError("watermark fraction must be in (0, 1]");
  }
  if (top_n_candidates < 1) {
    return absl::InvalidArgumentError("top_n_candidates must be at least 1");
  }
  if (threads < 1) return absl::InvalidArgumentError("threads must be >= 1");
  return absl::OkStatus();
}

const ReplacementDecision* SubstitutionCache::Find(
    std::string_view word) const {
  auto it = decisions_.find(absl::string_view(word.data(), word.size()));
  return it == decisions_.end() ? nullptr : &it->second;
}

void SubstitutionCache::Insert(std::string word,
                               ReplacementDecision decision) {
  decisions_.emplace(std::move(word), std::move(decision));
}

std::string SubstituteInSentence(const SentenceView& sentence,
                                 std::string_view normalized,
                                 std::string_view replacement) {
  std::string out;
  std::size_t cursor = 0;
  for (const WordToken& token : sentence.tokens) {
    if (token.normalized != normalized) continue;
    const std::size_t start = token.start - sentence.offset;
    const std::size_t end = token.end - sentence.offset;
    out.append(sentence.text.substr(cursor, start - cursor));
    out.append(CaseLike(token.surface, replacement));
    cursor = end;
  }
  out.append(sentence.text.substr(cursor));
  return out;
}

absl::StatusOr<ReplacementDecision> ChooseReplacement(
    const SentenceView& sentence, const ScoredKeyword& keyword,
    std::size_t token_index, const FrequencyTable& table,
    const EmbedProviders& providers, const EmbedConfig& config) {
  if (providers.synonyms == nullptr) {
    return absl::FailedPreconditionError("no synonym provider configured");
  }
  ReplacementDecision decision;
  decision.original_entropy = keyword.entropy;

  SynonymQuery query;
  query.word = keyword.token.normalized;
  query.sentence = std::string(sentence.text);
  query.position = token_index;
  query.top_n = config.top_n_candidates;
  LEXIMARK_ASSIGN_OR_RETURN(std::vector<SynonymCandidate> candidates,
                            SynonymCandidates(*providers.synonyms, query));

  std::vector<std::pair<std::string, double>> eligible;
  for (const SynonymCandidate& candidate : candidates) {
    if (!utf8::IsAllLetters(candidate.word)) continue;
    std::string word = utf8::Lowercase(candidate.word);
    const double entropy = table.Entropy(word);
    if (entropy > keyword.entropy) eligible.emplace_back(std::move(word), entropy);
  }
  if (eligible.empty()) return decision;

  if (!config.similarity_threshold.has_value()) {
    decision.replacement = eligible.front().first;
    decision.replacement_entropy = eligible.front().second;
    return decision;
  }

  if (providers.embeddings == nullptr) {
    return absl::FailedPreconditionError(
        "a similarity threshold needs an embedding provider");
  }
  std::vector<std::string> texts;
  texts.reserve(eligible.size() + 1);
  texts.emplace_back(sentence.text);
  for (const auto& [word, entropy] : eligible) {
    texts.push_back(
        SubstituteInSentence(sentence, keyword.token.normalized, word));
  }
  LEXIMARK_ASSIGN_OR_RETURN(std::vector<EmbeddingVector> vectors,
                            EmbedTexts(*providers.embeddings, texts));
  for (std::size_t i = 0; i < eligible.size(); ++i) {
    LEXIMARK_ASSIGN_OR_RETURN(double similarity,
                              CosineSimilarity(vectors[0], vectors[i + 1]));
    if (similarity >= *config.similarity_threshold) {
      decision.replacement = eligible[i].first;
      decision.replacement_entropy = eligible[i].second;
      decision.similarity = similarity;
      return decision;
    }
  }
  return decision;
}

absl::StatusOr<DocumentEmbedResult> EmbedDocument(
    const Document& doc, const FrequencyTable& table,
    const ExclusionPolicy& policy, const EmbedProviders& providers,
    const EmbedConfig& config, SubstitutionCache& cache) {
  const Document* docs[] = {&doc};
  LEXIMARK_ASSIGN_OR_RETURN(
      std::vector<DocumentEmbedResult> results,
      ProcessDocuments(docs, table, policy, providers, config, cache));
  return std::move(results.front());
}

std::vector<std::size_t> SelectWatermarkedDocuments(std::size_t n,
                                                    double fraction,
                                                    std::uint64_t seed) {
  std::vector<std::size_t> chosen;
  if (n == 0) return chosen;
  std::size_t count = n;
  if (fraction < 1.0) {
    // The epsilon keeps products like 0.05 * 100 from rounding up to 6.
    count = static_cast<std::size_t>(
        std::ceil(fraction * static_cast<double>(n) - 1e-9));
    count = std::clamp<std::size_t>(count, 1, n);
  }
  if (count == n) {
    chosen.resize(n);
    for (std::size_t i = 0; i < n; ++i) chosen[i] = i;
    return chosen;
  }
  Rng rng(DeriveSeed(seed, {0x6c78ULL}));
  chosen = SampleIndices(rng, n, count);
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

absl::StatusOr<CorpusEmbedResult> EmbedCorpus(
    std::span<const Document> corpus, const FrequencyTable& table,
    const ExclusionPolicy& policy, const EmbedProviders& providers,
    const EmbedConfig& config) {
  LEXIMARK_RETURN_IF_ERROR(config.Validate());
  const std::vector<std::size_t> chosen = SelectWatermarkedDocuments(
      corpus.size(), config.watermark_fraction, config.seed);
  std::vector<const Document*> selected;
  selected.reserve(chosen.size());
  for (std::size_t i : chosen) selected.push_back(&corpus[i]);

  SubstitutionCache cache;
  LEXIMARK_ASSIGN_OR_RETURN(
      std::vector<DocumentEmbedResult> results,
      ProcessDocuments(selected, table, policy, providers, config, cache));

  CorpusEmbedResult out;
  out.documents.assign(corpus.begin(), corpus.end());
  for (Document& doc : out.documents) doc.meta["leximark"] = "0";
  for (std::size_t j = 0; j < chosen.size(); ++j) {
    Document& doc = out.documents[chosen[j]];
    doc.text = std::move(results[j].document.text);
    doc.meta["leximark"] = "1";
    out.log.watermarked_ids.push_back(doc.id);
    std::move(results[j].records.begin(), results[j].records.end(),
              std::back_inserter(out.log.records));
  }
  return out;
}

std::string SerializeWatermarkLog(std::span<const SubstitutionRecord> records) {
  std::string out;
  for (const SubstitutionRecord& r : records) {
    ordered_json line;
    line["doc_id"] = r.doc_id;
    line["sentence_index"] = r.sentence_index;
    line["start"] = r.start;
    line["original"] = r.original;
    line["replacement"] = r.replacement;
    line["original_entropy"] = r.original_entropy;
    line["replacement_entropy"] = r.replacement_entropy;
    line["source"] = r.source == DecisionSource::kFresh ? "fresh" : "cache";
    if (r.similarity.has_value()) line["similarity"] = *r.similarity;
    out += line.dump(-1, ' ', false, json::error_handler_t::replace);
    out += '\n';
  }
  return out;
}

absl::StatusOr<std::vector<SubstitutionRecord>> ParseWatermarkLog(
    std::string_view contents) {
  std::vector<SubstitutionRecord> records;
  std::size_t line_number = 0;
  for (std::string_view line : Split(contents, '\n')) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      const json object = json::parse(line);
      SubstitutionRecord r;
      r.doc_id = object.at("doc_id").get<std::string>();
      r.sentence_index = object.at("sentence_index").get<std::size_t>();
      r.start = object.at("start").get<std::size_t>();
      r.original = object.at("original").get<std::string>();
      r.replacement = object.at("replacement").get<std::string>();
      r.original_entropy = object.at("original_entropy").get<double>();
      r.replacement_entropy = object.at("replacement_entropy").get<double>();
      r.source = object.at("source").get<std::string>() == "cache"
                     ? DecisionSource::kCache
                     : DecisionSource::kFresh;
      if (object.contains("similarity")) {
        r.similarity = object.at("similarity").get<double>();
      }
      records.push_back(std::move(r));
    } catch (const json::exception& e) {
      return absl::InvalidArgumentError(
          StrCat("line ", line_number, ": ", e.what()));
    }
  }
  return records;
}

}  // namespace leximark
