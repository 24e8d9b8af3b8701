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

#ifndef LEXIMARK_METRICS_H_
#define LEXIMARK_METRICS_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "leximark/corpus.h"
#include "leximark/providers.h"

namespace leximark {

// Whitespace tokens.
std::vector<std::string_view> BleuTokens(std::string_view text);

// BLEU-4 with uniform weights over whitespace tokens. Unigram precision is
// unsmoothed (no overlap gives 0); orders 2 to 4 use (matches + 1) /
// (candidate n-grams + 1). Brevity penalty exp(1 - r/c) when c <= r.
absl::StatusOr<double> Bleu(std::string_view candidate,
                            std::string_view reference);

struct TextPair {
  std::string original;
  std::string watermarked;
};

// Sentence pairs of aligned documents (matched by id). Documents whose
// sentence counts differ contribute one whole-text pair.
absl::StatusOr<std::vector<TextPair>> SentencePairs(
    std::span<const Document> originals,
    std::span<const Document> watermarked);

// Per threshold t, the share of pairs whose cosine is >= t.
absl::StatusOr<std::vector<std::pair<double, double>>> CosineFraction(
    std::span<const TextPair> pairs, const EmbeddingProvider& provider,
    std::span<const double> thresholds);

inline constexpr double kDefaultCosineThresholds[] = {0.7, 0.8, 0.9, 0.95};

struct SemanticReport {
  std::string config;
  double mean_bleu = 0.0;  // per document, averaged
  std::vector<std::pair<double, double>> cos_fraction;  // (threshold, share)
  std::size_t n_pairs = 0;  // sentence pairs behind cos_fraction
};

absl::StatusOr<SemanticReport> ComputeSemanticReport(
    std::string config, std::span<const Document> originals,
    std::span<const Document> watermarked, const EmbeddingProvider& provider,
    std::span<const double> thresholds = kDefaultCosineThresholds);

// config,mean_bleu,cos_<t>...,n_pairs
std::string SerializeSemanticReports(std::span<const SemanticReport> reports);

// exp(-(sum of scored logprobs) / (scored token count)) over all documents.
absl::StatusOr<double> CorpusPerplexity(
    std::span<const DocumentLogProbs> records);

// 100 * PPL_original / PPL_finetuned. Both sets must cover the same
// document ids.
absl::StatusOr<double> PerplexityRatio(
    std::span<const DocumentLogProbs> original,
    std::span<const DocumentLogProbs> finetuned);

}  // namespace leximark

#endif  // LEXIMARK_METRICS_H_
