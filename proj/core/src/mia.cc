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

#include "leximark/mia.h"

#include <algorithm>
#include <cmath>

#include <zlib.h>

#include "absl/strings/str_format.h"
#include "leximark/csv.h"
#include "leximark/status_macros.h"
#include "leximark/strings.h"

namespace leximark {
namespace {

std::vector<double> ScoredLogProbs(std::span<const TokenLogProb> tokens) {
  std::vector<double> out;
  out.reserve(tokens.size());
  for (const TokenLogProb& token : tokens) {
    if (token.scored) out.push_back(token.logprob);
  }
  return out;
}

// Sums the m smallest values in ascending order.
double MeanOfSmallest(std::vector<double> values, std::size_t m) {
  std::partial_sort(values.begin(), values.begin() + m, values.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) sum += values[i];
  return sum / static_cast<double>(m);
}

absl::Status CheckK(double k_pct) {
  if (!(k_pct > 0.0 && k_pct <= 100.0)) {
    return absl::InvalidArgumentError(
        StrCat("k_pct must be in (0, 100], got ", k_pct));
  }
  return absl::OkStatus();
}

absl::Status NoScoredTokens() {
  return absl::InvalidArgumentError("no scored tokens");
}

std::string FormatK(double k_pct) {
  const double tenths = k_pct * 10.0;
  if (tenths == std::round(tenths)) return absl::StrFormat("%.1f", k_pct);
  return FormatDouble(k_pct);
}

}  // namespace

absl::StatusOr<double> ScorePpl(std::span<const TokenLogProb> tokens) {
  std::vector<double> values = ScoredLogProbs(tokens);
  if (values.empty()) return NoScoredTokens();
  const std::size_t n = values.size();
  return MeanOfSmallest(std::move(values), n);
}

absl::StatusOr<double> Perplexity(std::span<const TokenLogProb> tokens) {
  LEXIMARK_ASSIGN_OR_RETURN(const double mean, ScorePpl(tokens));
  return std::exp(-mean);
}

absl::StatusOr<std::size_t> ZlibCompressedLength(std::string_view text) {
  uLongf size = compressBound(static_cast<uLong>(text.size()));
  std::vector<Bytef> buffer(size);
  const int rc = compress2(buffer.data(), &size,
                           reinterpret_cast<const Bytef*>(text.data()),
                           static_cast<uLong>(text.size()), 6);
  if (rc != Z_OK) {
    return absl::InternalError(StrCat("zlib compress2 failed: ", rc));
  }
  return static_cast<std::size_t>(size);
}

absl::StatusOr<double> ScoreZlib(std::span<const TokenLogProb> tokens,
                                 std::string_view raw_text) {
  if (raw_text.empty()) return absl::InvalidArgumentError("empty text");
  // -ln(exp(-mean)) is the mean itself.
  LEXIMARK_ASSIGN_OR_RETURN(const double mean, ScorePpl(tokens));
  LEXIMARK_ASSIGN_OR_RETURN(const std::size_t compressed,
                            ZlibCompressedLength(raw_text));
  return mean / static_cast<double>(compressed);
}

std::size_t MinKCount(std::size_t n, double k_pct) {
  const auto m = static_cast<std::size_t>(
      std::floor(k_pct * static_cast<double>(n) / 100.0));
  return std::clamp<std::size_t>(m, 1, std::max<std::size_t>(n, 1));
}

absl::StatusOr<double> ScoreMinK(std::span<const TokenLogProb> tokens,
                                 double k_pct) {
  LEXIMARK_RETURN_IF_ERROR(CheckK(k_pct));
  std::vector<double> values = ScoredLogProbs(tokens);
  if (values.empty()) return NoScoredTokens();
  const std::size_t m = MinKCount(values.size(), k_pct);
  return MeanOfSmallest(std::move(values), m);
}

absl::StatusOr<double> ScoreMinKPlusPlus(std::span<const TokenLogProb> tokens,
                                         double k_pct, std::size_t* skipped) {
  LEXIMARK_RETURN_IF_ERROR(CheckK(k_pct));
  std::vector<double> z;
  std::size_t skip = 0;
  for (const TokenLogProb& token : tokens) {
    if (!token.scored) continue;
    if (!(token.dist_std > 0.0)) {
      ++skip;
      continue;
    }
    z.push_back((token.logprob - token.dist_mean) / token.dist_std);
  }
  if (skipped != nullptr) *skipped = skip;
  if (z.empty()) {
    return absl::InvalidArgumentError(
        skip > 0 ? "every scored token lacks distribution moments (std <= 0)"
                 : "no scored tokens");
  }
  const std::size_t m = MinKCount(z.size(), k_pct);
  return MeanOfSmallest(std::move(z), m);
}

std::string MethodSpec::Name() const {
  switch (method) {
    case MiaMethod::kPpl:
      return "ppl";
    case MiaMethod::kZlib:
      return "zlib";
    case MiaMethod::kMinK:
      return StrCat("min_k_", FormatK(k_pct));
    case MiaMethod::kMinKPlusPlus:
      return StrCat("min_kpp_", FormatK(k_pct));
  }
  return "unknown";
}

absl::StatusOr<MethodSpec> ParseMethodSpec(std::string_view name,
                                           double default_k_pct) {
  name = StripWhitespace(name);
  if (name == "ppl" || name == "loss") return MethodSpec{MiaMethod::kPpl};
  if (name == "zlib") return MethodSpec{MiaMethod::kZlib};
  MethodSpec spec;
  std::string_view rest = name;
  if (ConsumePrefix(&rest, "min_kpp")) {
    spec.method = MiaMethod::kMinKPlusPlus;
  } else if (ConsumePrefix(&rest, "min_k")) {
    spec.method = MiaMethod::kMinK;
  } else {
    return absl::InvalidArgumentError(StrCat(
        "unknown method '", name, "' (ppl, zlib, min_k_<k>, min_kpp_<k>)"));
  }
  spec.k_pct = default_k_pct;
  if (!rest.empty()) {
    if (!ConsumePrefix(&rest, "_") || !ParseDouble(rest, &spec.k_pct)) {
      return absl::InvalidArgumentError(
          StrCat("bad percentage in method '", name, "'"));
    }
  }
  LEXIMARK_RETURN_IF_ERROR(CheckK(spec.k_pct));
  return spec;
}

absl::StatusOr<std::vector<MethodSpec>> ParseMethodList(std::string_view list,
                                                        double default_k_pct) {
  std::vector<MethodSpec> out;
  for (std::string_view item : SplitSkipEmpty(list, ",")) {
    LEXIMARK_ASSIGN_OR_RETURN(MethodSpec spec,
                              ParseMethodSpec(item, default_k_pct));
    if (std::find(out.begin(), out.end(), spec) == out.end()) {
      out.push_back(spec);
    }
  }
  if (out.empty()) return absl::InvalidArgumentError("no methods given");
  return out;
}

absl::StatusOr<ScoredDocument> ScoreDocument(
    const Document& doc, const DocumentLogProbs& records,
    std::span<const MethodSpec> methods) {
  ScoredDocument out;
  out.doc_id = doc.id;
  out.label = doc.label;
  out.truncated = records.truncated;
  out.token_count = static_cast<std::size_t>(
      std::count_if(records.tokens.begin(), records.tokens.end(),
                    [](const TokenLogProb& t) { return t.scored; }));
  for (const MethodSpec& spec : methods) {
    absl::StatusOr<double> score;
    switch (spec.method) {
      case MiaMethod::kPpl:
        score = ScorePpl(records.tokens);
        break;
      case MiaMethod::kZlib:
        score = ScoreZlib(records.tokens, doc.text);
        break;
      case MiaMethod::kMinK:
        score = ScoreMinK(records.tokens, spec.k_pct);
        break;
      case MiaMethod::kMinKPlusPlus:
        score = ScoreMinKPlusPlus(records.tokens, spec.k_pct,
                                  &out.skipped_tokens);
        break;
    }
    if (!score.ok()) {
      return absl::Status(score.status().code(),
                          StrCat("document '", doc.id, "', ",
                                       spec.Name(), ": ",
                                       score.status().message()));
    }
    out.scores[spec.Name()] = *score;
  }
  return out;
}

absl::StatusOr<std::vector<ScoredDocument>> ScoreCorpus(
    std::span<const Document> corpus, const LogProbProvider& provider,
    std::span<const MethodSpec> methods, std::size_t batch_size,
    const ScoreSink& sink) {
  if (methods.empty()) return absl::InvalidArgumentError("no methods given");
  batch_size = std::max<std::size_t>(batch_size, 1);
  std::vector<ScoredDocument> out;
  out.reserve(corpus.size());
  for (std::size_t begin = 0; begin < corpus.size(); begin += batch_size) {
    const auto batch =
        corpus.subspan(begin, std::min(batch_size, corpus.size() - begin));
    LEXIMARK_ASSIGN_OR_RETURN(std::vector<DocumentLogProbs> records,
                              TokenLogProbs(provider, batch));
    for (std::size_t i = 0; i < batch.size(); ++i) {
      LEXIMARK_ASSIGN_OR_RETURN(ScoredDocument scored,
                                ScoreDocument(batch[i], records[i], methods));
      if (sink) LEXIMARK_RETURN_IF_ERROR(sink(scored));
      out.push_back(std::move(scored));
    }
  }
  return out;
}

std::string ScoreCsvHeader(std::span<const std::string> method_names) {
  CsvRow header = {"doc_id", "label", "token_count"};
  header.insert(header.end(), method_names.begin(), method_names.end());
  return CsvLine(header) + "\n";
}

std::string ScoreCsvRow(const ScoredDocument& doc,
                        std::span<const std::string> method_names) {
  CsvRow row = {doc.doc_id, std::string(LabelName(doc.label)),
                StrCat(doc.token_count)};
  for (const std::string& name : method_names) {
    auto it = doc.scores.find(name);
    row.push_back(it == doc.scores.end() ? "" : FormatDouble(it->second));
  }
  return CsvLine(row) + "\n";
}

std::string SerializeScores(std::span<const ScoredDocument> docs,
                            std::span<const std::string> method_names) {
  std::string out = ScoreCsvHeader(method_names);
  for (const ScoredDocument& doc : docs) out += ScoreCsvRow(doc, method_names);
  return out;
}

absl::StatusOr<ScoreTable> ParseScores(std::string_view contents) {
  LEXIMARK_ASSIGN_OR_RETURN(std::vector<CsvRow> rows, ParseCsv(contents));
  if (rows.empty()) return absl::InvalidArgumentError("score file is empty");
  const CsvRow& header = rows.front();
  if (header.size() < 3 || header[0] != "doc_id" || header[1] != "label" ||
      header[2] != "token_count") {
    return absl::InvalidArgumentError(
        "score file header must start with doc_id,label,token_count");
  }
  ScoreTable table;
  table.methods.assign(header.begin() + 3, header.end());
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const CsvRow& row = rows[r];
    const std::string where = StrCat("score file row ", r + 1, ": ");
    if (row.size() != header.size()) {
      return absl::InvalidArgumentError(StrCat(
          where, "expected ", header.size(), " fields, got ", row.size()));
    }
    ScoredDocument doc;
    doc.doc_id = row[0];
    if (!row[1].empty() && row[1] != LabelName(Label::kUnknown)) {
      auto label = ParseLabel(row[1]);
      if (!label.ok()) {
        return absl::InvalidArgumentError(
            StrCat(where, label.status().message()));
      }
      doc.label = *label;
    }
    if (!ParseSize(row[2], &doc.token_count)) {
      return absl::InvalidArgumentError(
          StrCat(where, "bad token_count '", row[2], "'"));
    }
    for (std::size_t c = 3; c < row.size(); ++c) {
      if (row[c].empty()) continue;
      double value = 0.0;
      if (!ParseDouble(row[c], &value) || !std::isfinite(value)) {
        return absl::InvalidArgumentError(StrCat(
            where, "bad value '", row[c], "' for ", header[c]));
      }
      doc.scores[header[c]] = value;
    }
    table.documents.push_back(std::move(doc));
  }
  return table;
}

absl::StatusOr<ScoreTable> LoadScores(const std::string& path) {
  LEXIMARK_ASSIGN_OR_RETURN(std::string contents, ReadFile(path));
  auto table = ParseScores(contents);
  if (!table.ok()) {
    return absl::Status(table.status().code(),
                        StrCat(path, ": ", table.status().message()));
  }
  return table;
}

absl::StatusOr<LabeledScores> SplitByLabel(const ScoreTable& table,
                                           std::string_view method) {
  if (std::find(table.methods.begin(), table.methods.end(), method) ==
      table.methods.end()) {
    return absl::NotFoundError(
        StrCat("method '", method, "' not in score file"));
  }
  LabeledScores out;
  for (const ScoredDocument& doc : table.documents) {
    auto it = doc.scores.find(std::string(method));
    if (it == doc.scores.end()) continue;
    if (doc.label == Label::kMember) out.members.push_back(it->second);
    if (doc.label == Label::kNonmember) out.nonmembers.push_back(it->second);
  }
  if (out.members.empty() || out.nonmembers.empty()) {
    return absl::FailedPreconditionError(StrCat(
        "method '", method, "': need both member and nonmember rows (got ",
        out.members.size(), " member, ", out.nonmembers.size(),
        " nonmember)"));
  }
  return out;
}

}  // namespace leximark
