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

#ifndef LEXIMARK_MIA_H_
#define LEXIMARK_MIA_H_

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "leximark/corpus.h"
#include "leximark/providers.h"

namespace leximark {

// All scores are oriented so that higher means "more likely a member".
// Only tokens with `scored` set take part.

// exp(-mean logprob).
absl::StatusOr<double> Perplexity(std::span<const TokenLogProb> tokens);

// Mean logprob.
absl::StatusOr<double> ScorePpl(std::span<const TokenLogProb> tokens);

// Byte length of the zlib-format stream at level 6.
absl::StatusOr<std::size_t> ZlibCompressedLength(std::string_view text);

// -ln(perplexity) / compressed length of `raw_text`.
absl::StatusOr<double> ScoreZlib(std::span<const TokenLogProb> tokens,
                                 std::string_view raw_text);

// Number of tokens averaged: max(1, floor(k_pct / 100 * n)).
std::size_t MinKCount(std::size_t n, double k_pct);

// Mean of the m smallest logprobs.
absl::StatusOr<double> ScoreMinK(std::span<const TokenLogProb> tokens,
                                 double k_pct);

// Mean of the m smallest z = (logprob - dist_mean) / dist_std. Tokens with
// dist_std <= 0 are skipped and counted in `skipped` when given.
absl::StatusOr<double> ScoreMinKPlusPlus(std::span<const TokenLogProb> tokens,
                                         double k_pct,
                                         std::size_t* skipped = nullptr);

enum class MiaMethod { kPpl, kZlib, kMinK, kMinKPlusPlus };

struct MethodSpec {
  MiaMethod method = MiaMethod::kPpl;
  double k_pct = 20.0;  // min_k and min_kpp only

  // "ppl", "zlib", "min_k_20.0", "min_kpp_20.0".
  std::string Name() const;

  friend bool operator==(const MethodSpec&, const MethodSpec&) = default;
};

// Accepts the canonical names; "min_k" and "min_kpp" take `default_k_pct`.
absl::StatusOr<MethodSpec> ParseMethodSpec(std::string_view name,
                                           double default_k_pct = 20.0);
// Comma-separated list of method names.
absl::StatusOr<std::vector<MethodSpec>> ParseMethodList(
    std::string_view list, double default_k_pct = 20.0);

struct ScoredDocument {
  std::string doc_id;
  Label label = Label::kUnknown;
  std::map<std::string, double> scores;  // method name -> score
  std::size_t token_count = 0;           // scored tokens
  bool truncated = false;
  std::size_t skipped_tokens = 0;  // Min-K%++ tokens without moments
};

absl::StatusOr<ScoredDocument> ScoreDocument(
    const Document& doc, const DocumentLogProbs& records,
    std::span<const MethodSpec> methods);

using ScoreSink = std::function<absl::Status(const ScoredDocument&)>;

// Queries the provider in batches of `batch_size` documents and scores each
// one in input order. Every finished document is handed to `sink` (when
// set) before the next batch is requested, so a failing provider leaves the
// completed prefix behind.
absl::StatusOr<std::vector<ScoredDocument>> ScoreCorpus(
    std::span<const Document> corpus, const LogProbProvider& provider,
    std::span<const MethodSpec> methods, std::size_t batch_size = 8,
    const ScoreSink& sink = nullptr);

// Score file: doc_id,label,token_count,<method columns>.
std::string ScoreCsvHeader(std::span<const std::string> method_names);
std::string ScoreCsvRow(const ScoredDocument& doc,
                        std::span<const std::string> method_names);
std::string SerializeScores(std::span<const ScoredDocument> docs,
                            std::span<const std::string> method_names);

struct ScoreTable {
  std::vector<std::string> methods;  // column order
  std::vector<ScoredDocument> documents;
};

absl::StatusOr<ScoreTable> ParseScores(std::string_view contents);
absl::StatusOr<ScoreTable> LoadScores(const std::string& path);

// Scores of one method split by label; unlabeled rows are ignored.
struct LabeledScores {
  std::vector<double> members;
  std::vector<double> nonmembers;
};
absl::StatusOr<LabeledScores> SplitByLabel(const ScoreTable& table,
                                           std::string_view method);

}  // namespace leximark

#endif  // LEXIMARK_MIA_H_
