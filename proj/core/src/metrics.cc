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

#include "leximark/metrics.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"
#include "absl/strings/str_join.h"
#include "leximark/csv.h"
#include "leximark/status_macros.h"
#include "leximark/strings.h"

namespace leximark {
namespace {

constexpr std::size_t kMaxOrder = 4;

using NGramCounts = std::map<std::vector<std::string_view>, std::size_t>;

NGramCounts CountNGrams(const std::vector<std::string_view>& tokens,
                        std::size_t n) {
  NGramCounts counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string_view>(tokens.begin() + i,
                                           tokens.begin() + i + n)];
  }
  return counts;
}

}  // namespace

std::vector<std::string_view> BleuTokens(std::string_view text) {
  return SplitSkipEmpty(text, " \t\n\r\f\v");
}

absl::StatusOr<double> Bleu(std::string_view candidate,
                            std::string_view reference) {
  const std::vector<std::string_view> cand = BleuTokens(candidate);
  const std::vector<std::string_view> ref = BleuTokens(reference);
  if (cand.empty()) return absl::InvalidArgumentError("empty candidate");
  if (ref.empty()) return absl::InvalidArgumentError("empty reference");

  double log_sum = 0.0;
  for (std::size_t n = 1; n <= kMaxOrder; ++n) {
    const NGramCounts cand_counts = CountNGrams(cand, n);
    const NGramCounts ref_counts = CountNGrams(ref, n);
    std::size_t matches = 0;
    std::size_t total = 0;
    for (const auto& [gram, count] : cand_counts) {
      total += count;
      auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) matches += std::min(count, it->second);
    }
    double precision;
    if (n == 1) {
      if (matches == 0) return 0.0;
      precision = static_cast<double>(matches) / static_cast<double>(total);
    } else {
      precision = static_cast<double>(matches + 1) /
                  static_cast<double>(total + 1);
    }
    log_sum += std::log(precision) / static_cast<double>(kMaxOrder);
  }
  const double c = static_cast<double>(cand.size());
  const double r = static_cast<double>(ref.size());
  const double brevity = c > r ? 1.0 : std::exp(1.0 - r / c);
  return brevity * std::exp(log_sum);
}

absl::StatusOr<std::vector<TextPair>> SentencePairs(
    std::span<const Document> originals,
    std::span<const Document> watermarked) {
  absl::flat_hash_map<std::string_view, const Document*> by_id;
  for (const Document& doc : watermarked) by_id[doc.id] = &doc;
  if (by_id.size() != originals.size()) {
    return absl::InvalidArgumentError(StrCat(
        "corpora differ in size: ", originals.size(), " original vs ",
        watermarked.size(), " watermarked"));
  }
  std::vector<TextPair> pairs;
  for (const Document& original : originals) {
    auto it = by_id.find(original.id);
    if (it == by_id.end()) {
      return absl::InvalidArgumentError(StrCat(
          "document '", original.id, "' missing from watermarked corpus"));
    }
    const Document& marked = *it->second;
    const std::vector<SentenceSpan> a = SplitSentences(original.text);
    const std::vector<SentenceSpan> b = SplitSentences(marked.text);
    if (a.size() != b.size()) {
      pairs.push_back({original.text, marked.text});
      continue;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      pairs.push_back({std::string(a[i].View(original.text)),
                       std::string(b[i].View(marked.text))});
    }
  }
  return pairs;
}

absl::StatusOr<std::vector<std::pair<double, double>>> CosineFraction(
    std::span<const TextPair> pairs, const EmbeddingProvider& provider,
    std::span<const double> thresholds) {
  for (double t : thresholds) {
    if (!(t >= 0.0 && t <= 1.0)) {
      return absl::InvalidArgumentError(
          StrCat("threshold must be in [0, 1], got ", t));
    }
  }
  if (pairs.empty()) return absl::InvalidArgumentError("no text pairs");
  std::vector<std::string> texts;
  texts.reserve(2 * pairs.size());
  for (const TextPair& pair : pairs) {
    texts.push_back(pair.original);
    texts.push_back(pair.watermarked);
  }
  LEXIMARK_ASSIGN_OR_RETURN(std::vector<EmbeddingVector> vectors,
                            EmbedTexts(provider, texts));
  std::vector<double> cosines;
  cosines.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    LEXIMARK_ASSIGN_OR_RETURN(
        double cos, CosineSimilarity(vectors[2 * i], vectors[2 * i + 1]));
    cosines.push_back(cos);
  }
  std::vector<std::pair<double, double>> out;
  for (double t : thresholds) {
    const auto hits = std::count_if(cosines.begin(), cosines.end(),
                                    [t](double c) { return c >= t; });
    out.emplace_back(t, static_cast<double>(hits) /
                            static_cast<double>(cosines.size()));
  }
  return out;
}

absl::StatusOr<SemanticReport> ComputeSemanticReport(
    std::string config, std::span<const Document> originals,
    std::span<const Document> watermarked, const EmbeddingProvider& provider,
    std::span<const double> thresholds) {
  LEXIMARK_ASSIGN_OR_RETURN(std::vector<TextPair> pairs,
                            SentencePairs(originals, watermarked));
  SemanticReport report;
  report.config = std::move(config);
  absl::flat_hash_map<std::string_view, const Document*> by_id;
  for (const Document& doc : watermarked) by_id[doc.id] = &doc;
  double bleu_sum = 0.0;
  for (const Document& original : originals) {
    const Document& marked = *by_id.at(original.id);
    absl::StatusOr<double> bleu = Bleu(marked.text, original.text);
    if (!bleu.ok()) {
      return absl::InvalidArgumentError(StrCat(
          "document '", original.id, "': ", bleu.status().message()));
    }
    bleu_sum += *bleu;
  }
  report.mean_bleu = bleu_sum / static_cast<double>(originals.size());
  LEXIMARK_ASSIGN_OR_RETURN(report.cos_fraction,
                            CosineFraction(pairs, provider, thresholds));
  report.n_pairs = pairs.size();
  return report;
}

std::string SerializeSemanticReports(std::span<const SemanticReport> reports) {
  CsvRow header = {"config", "mean_bleu"};
  if (!reports.empty()) {
    for (const auto& [t, share] : reports.front().cos_fraction) {
      header.push_back(StrCat("cos_", FormatDouble(t)));
    }
  }
  header.push_back("n_pairs");
  std::string out = CsvLine(header) + "\n";
  for (const SemanticReport& report : reports) {
    CsvRow row = {report.config, FormatDouble(report.mean_bleu)};
    for (const auto& [t, share] : report.cos_fraction) {
      row.push_back(FormatDouble(share));
    }
    row.push_back(StrCat(report.n_pairs));
    out += CsvLine(row) + "\n";
  }
  return out;
}

absl::StatusOr<double> CorpusPerplexity(
    std::span<const DocumentLogProbs> records) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const DocumentLogProbs& doc : records) {
    for (const TokenLogProb& token : doc.tokens) {
      if (!token.scored) continue;
      sum += token.logprob;
      ++count;
    }
  }
  if (count == 0) return absl::InvalidArgumentError("no scored tokens");
  return std::exp(-sum / static_cast<double>(count));
}

absl::StatusOr<double> PerplexityRatio(
    std::span<const DocumentLogProbs> original,
    std::span<const DocumentLogProbs> finetuned) {
  absl::flat_hash_set<std::string_view> a;
  absl::flat_hash_set<std::string_view> b;
  for (const DocumentLogProbs& doc : original) a.insert(doc.doc_id);
  for (const DocumentLogProbs& doc : finetuned) b.insert(doc.doc_id);
  if (a != b) {
    return absl::InvalidArgumentError(
        "original and fine-tuned records cover different documents");
  }
  LEXIMARK_ASSIGN_OR_RETURN(const double ppl_original,
                            CorpusPerplexity(original));
  LEXIMARK_ASSIGN_OR_RETURN(const double ppl_finetuned,
                            CorpusPerplexity(finetuned));
  return 100.0 * ppl_original / ppl_finetuned;
}

}  // namespace leximark
