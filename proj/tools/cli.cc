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

#include "cli.h"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <memory>
#include <optional>
#include <utility>

#include "CLI11.hpp"
#include "absl/strings/str_format.h"
#include "leximark/baselines.h"
#include "leximark/corpus.h"
#include "leximark/csv.h"
#include "leximark/detect.h"
#include "leximark/embedder.h"
#include "leximark/entropy.h"
#include "leximark/http_providers.h"
#include "leximark/metrics.h"
#include "leximark/mia.h"
#include "leximark/providers.h"
#include "leximark/status_macros.h"
#include "leximark/strings.h"
#include "leximark/wordnet.h"
#include "manifest.h"

#ifndef LEXIMARK_VERSION
#define LEXIMARK_VERSION "0.0.0"
#endif

namespace leximark::cli {
namespace {

constexpr char kDefaultBridgeUrl[] = "http://127.0.0.1:8080";
constexpr char kBridgeEnv[] = "LEXIMARK_BRIDGE_URL";

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::vector<std::string> command_line;
  CLI::App* command = nullptr;
};

absl::Status WithPath(const std::string& path, absl::Status status) {
  if (status.ok()) return status;
  return absl::Status(status.code(), StrCat(path, ": ", status.message()));
}

absl::StatusOr<std::vector<double>> ParseDoubleList(std::string_view list,
                                                    std::string_view what) {
  std::vector<double> out;
  for (std::string_view item : SplitSkipEmpty(list, ", ")) {
    double value = 0.0;
    if (!ParseDouble(item, &value)) {
      return absl::InvalidArgumentError(
          StrCat("bad ", what, " '", item, "'"));
    }
    out.push_back(value);
  }
  if (out.empty()) return absl::InvalidArgumentError(StrCat("no ", what));
  return out;
}

absl::StatusOr<std::vector<std::size_t>> ParseSizeList(std::string_view list,
                                                       std::string_view what) {
  std::vector<std::size_t> out;
  for (std::string_view item : SplitSkipEmpty(list, ", ")) {
    std::size_t value = 0;
    if (!ParseSize(item, &value)) {
      return absl::InvalidArgumentError(StrCat("bad ", what, " '", item, "'"));
    }
    out.push_back(value);
  }
  if (out.empty()) return absl::InvalidArgumentError(StrCat("no ", what));
  return out;
}

// ---------------------------------------------------------------------------
// Shared flag groups
// ---------------------------------------------------------------------------

struct BridgeFlags {
  std::string url = kDefaultBridgeUrl;
  std::string token;
  int max_retries = 3;

  std::shared_ptr<const leximark::Transport> MakeTransport() const {
    HttpEndpoint endpoint;
    endpoint.base_url = url;
    endpoint.bearer_token = token;
    return MakeHttpTransport(std::move(endpoint));
  }
  RetryPolicy Policy() const {
    RetryPolicy policy;
    policy.max_retries = max_retries;
    return policy;
  }
};

void AddBridgeFlags(CLI::App* app, BridgeFlags* flags) {
  app->add_option("--bridge-url", flags->url, "Model bridge base URL")
      ->envname(kBridgeEnv)
      ->capture_default_str();
  app->add_option("--bridge-token", flags->token, "Bearer token for the bridge")
      ->envname("LEXIMARK_BRIDGE_TOKEN");
  app->add_option("--max-retries", flags->max_retries,
                  "Retries on transient provider errors")
      ->capture_default_str();
}

struct SynonymFlags {
  std::string source = "tsv";
  std::string lexicon;
  std::string wndb_dir;
  std::size_t top_n = 10;
};

void AddSynonymFlags(CLI::App* app, SynonymFlags* flags) {
  app->add_option("--synonyms", flags->source,
                  "Synonym source: tsv, wndb, concat, dropout")
      ->capture_default_str();
  app->add_option("--lexicon", flags->lexicon,
                  "TSV lexicon (word<TAB>syn1,syn2,...) for --synonyms tsv");
  app->add_option("--wndb-dir", flags->wndb_dir,
                  "WordNet database directory for --synonyms wndb");
  app->add_option("--top-n", flags->top_n, "Candidates requested per word")
      ->capture_default_str();
}

absl::StatusOr<std::unique_ptr<SynonymProvider>> MakeSynonymProvider(
    std::string_view name, const SynonymFlags& flags, const BridgeFlags& bridge,
    std::vector<std::string>* inputs) {
  LEXIMARK_ASSIGN_OR_RETURN(SynonymSource source, ParseSynonymSource(name));
  switch (source) {
    case SynonymSource::kTsvStub: {
      if (flags.lexicon.empty()) {
        return absl::InvalidArgumentError("--synonyms tsv needs --lexicon");
      }
      LEXIMARK_ASSIGN_OR_RETURN(TsvLexiconLoad load,
                                LoadTsvLexicon(flags.lexicon));
      if (inputs != nullptr) inputs->push_back(flags.lexicon);
      return std::make_unique<LexiconSynonymProvider>(std::move(load.lexicon),
                                                      "tsv");
    }
    case SynonymSource::kWndb: {
      if (flags.wndb_dir.empty()) {
        return absl::InvalidArgumentError("--synonyms wndb needs --wndb-dir");
      }
      LEXIMARK_ASSIGN_OR_RETURN(std::vector<SynsetEntry> synsets,
                                ParseWndb(flags.wndb_dir));
      if (inputs != nullptr) inputs->push_back(flags.wndb_dir);
      return std::make_unique<LexiconSynonymProvider>(BuildLexicon(synsets),
                                                      "wndb");
    }
    case SynonymSource::kRemoteConcat:
      return std::make_unique<RemoteLexSubProvider>(
          bridge.MakeTransport(), protocol::LexSubMode::kConcat, bridge.Policy());
    case SynonymSource::kRemoteDropout:
      return std::make_unique<RemoteLexSubProvider>(
          bridge.MakeTransport(), protocol::LexSubMode::kDropout, bridge.Policy());
  }
  return absl::InvalidArgumentError("unknown synonym source");
}

struct EmbedderFlags {
  std::string kind = "hashing";
  std::size_t dim = 4096;
};

void AddEmbedderFlags(CLI::App* app, EmbedderFlags* flags) {
  app->add_option("--embedder", flags->kind,
                  "Sentence embeddings: hashing (offline) or remote")
      ->capture_default_str();
  app->add_option("--embedding-dim", flags->dim, "Dimension for --embedder hashing")
      ->capture_default_str();
}

absl::StatusOr<std::unique_ptr<EmbeddingProvider>> MakeEmbeddingProvider(
    const EmbedderFlags& flags, const BridgeFlags& bridge) {
  if (flags.kind == "hashing") {
    if (flags.dim < 1) {
      return absl::InvalidArgumentError("--embedding-dim must be positive");
    }
    return std::make_unique<HashingEmbeddingProvider>(flags.dim);
  }
  if (flags.kind == "remote") {
    return std::make_unique<RemoteEmbeddingProvider>(bridge.MakeTransport(),
                                                     bridge.Policy());
  }
  return absl::InvalidArgumentError(
      StrCat("unknown embedder '", flags.kind, "' (hashing, remote)"));
}

struct LexicalFlags {
  std::string freq_table;
  double oov_cap = kDefaultOovEntropyCap;
  std::string stoplist;
  bool no_entity_filter = false;
  std::size_t k = 5;
  double sim_threshold = 0.0;
  CLI::Option* sim_option = nullptr;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  SynonymFlags synonyms;
  EmbedderFlags embedder;
  BridgeFlags bridge;
};

void AddLexicalFlags(CLI::App* app, LexicalFlags* flags) {
  app->add_option("--freq-table", flags->freq_table,
                  "Word frequency table (word<TAB>probability)")
      ->required();
  app->add_option("--oov-cap", flags->oov_cap,
                  "Entropy in bits for words missing from the table")
      ->capture_default_str();
  app->add_option("--stoplist", flags->stoplist,
                  "Function-word list replacing the built-in one");
  app->add_flag("--no-entity-filter", flags->no_entity_filter,
                "Do not skip capitalized mid-sentence words");
  app->add_option("--k", flags->k, "Words replaced per sentence")
      ->capture_default_str();
  flags->sim_option = app->add_option(
      "--sim-threshold", flags->sim_threshold,
      "Minimum sentence cosine for a substitution (off when absent)");
  app->add_option("--seed", flags->seed, "Seed for document selection")
      ->capture_default_str();
  app->add_option("--threads", flags->threads, "Worker threads")
      ->capture_default_str();
  AddSynonymFlags(app, &flags->synonyms);
  AddEmbedderFlags(app, &flags->embedder);
  AddBridgeFlags(app, &flags->bridge);
}

struct LexicalSetup {
  FrequencyTable table;
  ExclusionPolicy policy;
  std::unique_ptr<SynonymProvider> synonyms;
  std::unique_ptr<EmbeddingProvider> embeddings;
  EmbedConfig config;

  EmbedProviders providers() const {
    return {synonyms.get(), embeddings.get()};
  }
};

EmbedConfig ConfigFrom(const LexicalFlags& flags) {
  EmbedConfig config;
  config.k = flags.k;
  config.top_n_candidates = flags.synonyms.top_n;
  config.seed = flags.seed;
  config.threads = flags.threads;
  if (flags.sim_option != nullptr && flags.sim_option->count() > 0) {
    config.similarity_threshold = flags.sim_threshold;
  }
  return config;
}

absl::StatusOr<LexicalSetup> SetUpLexical(const LexicalFlags& flags,
                                          std::vector<std::string>* inputs) {
  LexicalSetup setup;
  setup.config = ConfigFrom(flags);
  LEXIMARK_ASSIGN_OR_RETURN(setup.config.synonym_source,
                            ParseSynonymSource(flags.synonyms.source));
  LEXIMARK_RETURN_IF_ERROR(setup.config.Validate());
  if (!(flags.oov_cap > 0.0)) {
    return absl::InvalidArgumentError("--oov-cap must be positive");
  }
  LEXIMARK_ASSIGN_OR_RETURN(FrequencyTableLoad load,
                            LoadFrequencyTable(flags.freq_table, flags.oov_cap));
  setup.table = std::move(load.table);
  inputs->push_back(flags.freq_table);
  setup.policy = ExclusionPolicy::Default();
  if (flags.no_entity_filter) setup.policy.entity_detector = nullptr;
  if (!flags.stoplist.empty()) {
    LEXIMARK_ASSIGN_OR_RETURN(setup.policy.function_words,
                              LoadStoplist(flags.stoplist));
    inputs->push_back(flags.stoplist);
  }
  LEXIMARK_ASSIGN_OR_RETURN(
      setup.synonyms, MakeSynonymProvider(flags.synonyms.source, flags.synonyms,
                                          flags.bridge, inputs));
  if (setup.config.similarity_threshold.has_value()) {
    LEXIMARK_ASSIGN_OR_RETURN(
        setup.embeddings, MakeEmbeddingProvider(flags.embedder, flags.bridge));
  }
  return setup;
}

absl::StatusOr<std::vector<Document>> LoadCorpusInput(
    const std::string& path, std::vector<std::string>* inputs) {
  LEXIMARK_ASSIGN_OR_RETURN(std::vector<Document> docs, LoadCorpus(path));
  inputs->push_back(path);
  return docs;
}

// Writes the manifest next to the primary output unless a path is given.
absl::Status EmitManifest(const Context& ctx, const std::string& path,
                          const std::string& primary_output,
                          std::uint64_t seed, std::vector<std::string> inputs,
                          std::vector<std::string> outputs,
                          const std::string& started_at) {
  RunManifest manifest;
  manifest.tool_version = LEXIMARK_VERSION;
  manifest.command_line = ctx.command_line;
  manifest.subcommand = ctx.command->get_name();
  // Credentials stay out of the on-disk snapshot.
  const std::string config = ctx.command->config_to_str(true, false);
  for (std::string_view line : Split(config, '\n')) {
    if (line.empty() || line.starts_with("bridge-token=")) continue;
    StrAppend(&manifest.config, line, "\n");
  }
  manifest.seed = seed;
  manifest.inputs = std::move(inputs);
  manifest.outputs = std::move(outputs);
  manifest.started_at = started_at;
  manifest.finished_at = UtcTimestamp();
  const std::string target =
      path.empty() ? primary_output + ".manifest.json" : path;
  return WithPath(target, WriteManifest(target, manifest));
}

absl::Status WriteOutput(const std::string& path, std::string_view contents,
                         std::vector<std::string>* outputs) {
  LEXIMARK_RETURN_IF_ERROR(WriteFile(path, contents));
  outputs->push_back(path);
  return absl::OkStatus();
}

// ---------------------------------------------------------------------------
// embed
// ---------------------------------------------------------------------------

struct EmbedFlags {
  std::string corpus;
  std::string out;
  std::string log;
  std::string manifest;
  double fraction = 1.0;
  std::string combine;
  std::string homoglyphs;
  std::size_t seq_length = 10;
  std::size_t seq_count = 1;
  LexicalFlags lexical;
};

absl::StatusOr<std::vector<std::unique_ptr<Watermarker>>> MakeExtraWatermarkers(
    std::string_view list, const std::string& homoglyphs, std::uint64_t seed,
    std::size_t seq_length, std::size_t seq_count,
    std::vector<std::string>* inputs) {
  std::vector<std::unique_ptr<Watermarker>> out;
  for (std::string_view name : SplitSkipEmpty(list, ", ")) {
    if (name == "unicode") {
      HomoglyphMap map = HomoglyphMap::Default();
      if (!homoglyphs.empty()) {
        LEXIMARK_ASSIGN_OR_RETURN(map, HomoglyphMap::Load(homoglyphs));
        inputs->push_back(homoglyphs);
      }
      out.push_back(std::make_unique<UnicodeWatermarker>(std::move(map)));
    } else if (name == "randomseq") {
      if (seq_length < 1 || seq_count < 1) {
        return absl::InvalidArgumentError(
            "--seq-length and --seq-count must be positive");
      }
      out.push_back(std::make_unique<RandomSequenceWatermarker>(
          seed, seq_length, seq_count));
    } else {
      return absl::InvalidArgumentError(StrCat(
          "unknown watermark '", name, "' in --combine (unicode, randomseq)"));
    }
  }
  return out;
}

absl::Status RunEmbed(const EmbedFlags& flags, Context& ctx) {
  const std::string started = UtcTimestamp();
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  LEXIMARK_ASSIGN_OR_RETURN(LexicalSetup setup,
                            SetUpLexical(flags.lexical, &inputs));
  setup.config.watermark_fraction = flags.fraction;
  LEXIMARK_RETURN_IF_ERROR(setup.config.Validate());
  LEXIMARK_ASSIGN_OR_RETURN(
      std::vector<std::unique_ptr<Watermarker>> extra,
      MakeExtraWatermarkers(flags.combine, flags.homoglyphs,
                            flags.lexical.seed, flags.seq_length,
                            flags.seq_count, &inputs));
  LEXIMARK_ASSIGN_OR_RETURN(std::vector<Document> corpus,
                            LoadCorpusInput(flags.corpus, &inputs));

  LEXIMARK_ASSIGN_OR_RETURN(
      CorpusEmbedResult result,
      EmbedCorpus(corpus, setup.table, setup.policy, setup.providers(),
                  setup.config));

  std::vector<SequenceInsertion> insertions;
  if (!extra.empty()) {
    std::vector<Watermarker*> pipeline;
    for (const auto& w : extra) pipeline.push_back(w.get());
    for (Document& doc : result.documents) {
      auto it = doc.meta.find("leximark");
      if (it == doc.meta.end() || it->second != "1") continue;
      LEXIMARK_ASSIGN_OR_RETURN(CombinedResult combined,
                                Combine(doc, pipeline));
      for (const WatermarkStep& step : combined.steps) {
        insertions.insert(insertions.end(), step.insertions.begin(),
                          step.insertions.end());
      }
      doc = std::move(combined.document);
    }
  }

  LEXIMARK_RETURN_IF_ERROR(
      WriteOutput(flags.out, SerializeCorpus(result.documents), &outputs));
  const std::string log = flags.log.empty() ? flags.out + ".log.jsonl" : flags.log;
  LEXIMARK_RETURN_IF_ERROR(
      WriteOutput(log, SerializeWatermarkLog(result.log.records), &outputs));
  if (!insertions.empty()) {
    LEXIMARK_RETURN_IF_ERROR(WriteOutput(flags.out + ".insertions.jsonl",
                                         SerializeInsertions(insertions),
                                         &outputs));
  }
  LEXIMARK_RETURN_IF_ERROR(EmitManifest(ctx, flags.manifest, flags.out,
                                        flags.lexical.seed, inputs, outputs,
                                        started));
  ctx.out << "watermarked " << result.log.watermarked_ids.size() << " of "
          << corpus.size() << " documents, " << result.log.records.size()
          << " substitutions\n";
  return absl::OkStatus();
}

// ---------------------------------------------------------------------------
// score
// ---------------------------------------------------------------------------

struct ScoringFlags {
  std::string provider = "auto";
  std::string logprobs_dump;
  std::string freq_table;
  std::string model = "default";
  std::size_t batch_size = 8;
  BridgeFlags bridge;
};

void AddScoringFlags(CLI::App* app, ScoringFlags* flags,
                     std::string_view prefix = "") {
  const std::string p(prefix);
  app->add_option("--" + p + "provider", flags->provider,
                  "Log-prob source: auto, dump, unigram, remote")
      ->capture_default_str();
  app->add_option("--" + p + "logprobs-dump", flags->logprobs_dump,
                  "Recorded log-prob dump (JSONL)");
  app->add_option("--" + p + "freq-table", flags->freq_table,
                  "Frequency table for the unigram stub model");
  app->add_option("--model", flags->model, "Model name sent to the bridge")
      ->capture_default_str();
  app->add_option("--batch-size", flags->batch_size,
                  "Documents per provider request")
      ->capture_default_str();
}

struct ScoringSetup {
  std::unique_ptr<FrequencyTable> table;
  std::unique_ptr<LogProbProvider> provider;
};

absl::StatusOr<ScoringSetup> SetUpScoring(const ScoringFlags& flags,
                                          std::vector<std::string>* inputs) {
  std::string kind = flags.provider;
  if (kind == "auto") {
    kind = !flags.logprobs_dump.empty() ? "dump"
           : !flags.freq_table.empty()  ? "unigram"
                                        : "remote";
  }
  ScoringSetup setup;
  if (kind == "dump") {
    if (flags.logprobs_dump.empty()) {
      return absl::InvalidArgumentError("dump provider needs --logprobs-dump");
    }
    LEXIMARK_ASSIGN_OR_RETURN(DumpLogProbProvider dump,
                              DumpLogProbProvider::Load(flags.logprobs_dump));
    inputs->push_back(flags.logprobs_dump);
    setup.provider = std::make_unique<DumpLogProbProvider>(std::move(dump));
  } else if (kind == "unigram") {
    if (flags.freq_table.empty()) {
      return absl::InvalidArgumentError("unigram provider needs a frequency table");
    }
    LEXIMARK_ASSIGN_OR_RETURN(FrequencyTableLoad load,
                              LoadFrequencyTable(flags.freq_table));
    inputs->push_back(flags.freq_table);
    setup.table = std::make_unique<FrequencyTable>(std::move(load.table));
    setup.provider = std::make_unique<UnigramLogProbProvider>(*setup.table);
  } else if (kind == "remote") {
    setup.provider = std::make_unique<RemoteLogProbProvider>(
        flags.bridge.MakeTransport(), flags.model, flags.bridge.Policy(),
        flags.batch_size);
  } else {
    return absl::InvalidArgumentError(StrCat(
        "unknown log-prob provider '", kind, "' (auto, dump, unigram, remote)"));
  }
  return setup;
}

struct ScoreFlags {
  std::string corpus;
  std::string out;
  std::string manifest;
  std::string methods = "ppl,zlib,min_k_20.0,min_kpp_20.0";
  double k_pct = 20.0;
  ScoringFlags scoring;
};

absl::Status RunScore(const ScoreFlags& flags, Context& ctx) {
  const std::string started = UtcTimestamp();
  std::vector<std::string> inputs;
  LEXIMARK_ASSIGN_OR_RETURN(std::vector<MethodSpec> methods,
                            ParseMethodList(flags.methods, flags.k_pct));
  LEXIMARK_ASSIGN_OR_RETURN(ScoringSetup setup,
                            SetUpScoring(flags.scoring, &inputs));
  LEXIMARK_ASSIGN_OR_RETURN(std::vector<Document> corpus,
                            LoadCorpusInput(flags.corpus, &inputs));
  std::vector<std::string> names;
  for (const MethodSpec& spec : methods) names.push_back(spec.Name());

  std::ofstream file(flags.out, std::ios::binary | std::ios::trunc);
  if (!file) {
    return absl::PermissionDeniedError(
        StrCat(flags.out, ": cannot open for writing"));
  }
  file << ScoreCsvHeader(names);
  std::size_t truncated = 0;
  std::size_t skipped = 0;
  auto sink = [&](const ScoredDocument& doc) -> absl::Status {
    file << ScoreCsvRow(doc, names);
    file.flush();
    if (doc.truncated) ++truncated;
    skipped += doc.skipped_tokens;
    return file ? absl::OkStatus()
                : absl::DataLossError(StrCat(flags.out, ": write failed"));
  };
  auto scored = ScoreCorpus(corpus, *setup.provider, methods,
                            flags.scoring.batch_size, sink);
  file.close();
  if (!scored.ok()) return scored.status();
  if (truncated > 0) {
    ctx.err << "warning: " << truncated
            << " documents were truncated by the provider\n";
  }
  if (skipped > 0) {
    ctx.err << "warning: " << skipped
            << " tokens without distribution moments skipped by Min-K%++\n";
  }
  LEXIMARK_RETURN_IF_ERROR(EmitManifest(ctx, flags.manifest, flags.out, 0,
                                        inputs, {flags.out}, started));
  ctx.out << "scored " << scored->size() << " documents\n";
  return absl::OkStatus();
}

// ---------------------------------------------------------------------------
// report / dataset-test
// ---------------------------------------------------------------------------

struct ReportFlags {
  std::string scores;
  std::string methods;
  std::string fpr = "0.05";
  std::string out;
  std::string manifest;
};

absl::Status RunReport(const ReportFlags& flags, Context& ctx) {
  const std::string started = UtcTimestamp();
  LEXIMARK_ASSIGN_OR_RETURN(std::vector<double> levels,
                            ParseDoubleList(flags.fpr, "FPR level"));
  LEXIMARK_ASSIGN_OR_RETURN(ScoreTable table, LoadScores(flags.scores));
  std::vector<std::string> methods;
  for (std::string_view m : SplitSkipEmpty(flags.methods, ", ")) {
    methods.emplace_back(m);
  }
  LEXIMARK_ASSIGN_OR_RETURN(std::vector<DetectionReport> reports,
                            BuildReports(table, methods, levels));
  ctx.out << FormatReportTable(reports);
  if (!flags.out.empty()) {
    std::vector<std::string> outputs;
    LEXIMARK_RETURN_IF_ERROR(
        WriteOutput(flags.out, SerializeReports(reports), &outputs));
    LEXIMARK_RETURN_IF_ERROR(EmitManifest(ctx, flags.manifest, flags.out, 0,
                                          {flags.scores}, outputs, started));
  }
  return absl::OkStatus();
}

struct DatasetTestFlags {
  std::string scores;
  std::string method;
  std::string group_sizes = "2:100";
  std::size_t reps = 100;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  double member_subset_fraction = 1.0;
  std::string out;
  std::string manifest;
};

absl::Status RunDatasetTest(const DatasetTestFlags& flags, Context& ctx) {
  const std::string started = UtcTimestamp();
  LEXIMARK_ASSIGN_OR_RETURN(std::vector<std::size_t> sizes,
                            ParseGroupSizes(flags.group_sizes));
  LEXIMARK_ASSIGN_OR_RETURN(ScoreTable table, LoadScores(flags.scores));
  std::string method = flags.method;
  if (method.empty()) {
    if (table.methods.empty()) {
      return absl::InvalidArgumentError("score file has no method columns");
    }
    method = table.methods.front();
  }
  LEXIMARK_ASSIGN_OR_RETURN(LabeledScores scores, SplitByLabel(table, method));
  SweepConfig config;
  config.group_sizes = std::move(sizes);
  config.repetitions = flags.reps;
  config.seed = flags.seed;
  config.threads = flags.threads;
  config.member_subset_fraction = flags.member_subset_fraction;
  LEXIMARK_ASSIGN_OR_RETURN(
      std::vector<SweepResult> results,
      DatasetInferenceSweep(scores.members, scores.nonmembers, config));
  const std::string csv = SerializeSweep(results);
  if (flags.out.empty()) {
    ctx.out << csv;
  } else {
    std::vector<std::string> outputs;
    LEXIMARK_RETURN_IF_ERROR(WriteOutput(flags.out, csv, &outputs));
    LEXIMARK_RETURN_IF_ERROR(EmitManifest(ctx, flags.manifest, flags.out,
                                          flags.seed, {flags.scores}, outputs,
                                          started));
  }
  auto first = std::find_if(results.begin(), results.end(),
                            [](const SweepResult& r) { return r.mean_p < 0.05; });
  if (first == results.end()) {
    ctx.err << method << ": mean p-value stays >= 0.05 at every group size\n";
  } else {
    ctx.err << method << ": mean p-value < 0.05 from group size "
            << first->group_size << "\n";
  }
  return absl::OkStatus();
}

// ---------------------------------------------------------------------------
// sweep-k
// ---------------------------------------------------------------------------

struct SweepKFlags {
  std::string corpus;
  std::string out;
  std::string manifest;
  std::string k_list = "3,4,5,6,7";
  std::string thresholds = "0.7,0.8,0.9,0.95";
  std::string score_method = "min_kpp_20.0";
  LexicalFlags lexical;
  ScoringFlags scoring;
};

absl::Status RunSweepK(const SweepKFlags& flags, Context& ctx) {
  const std::string started = UtcTimestamp();
  std::vector<std::string> inputs;
  LEXIMARK_ASSIGN_OR_RETURN(std::vector<std::size_t> ks,
                            ParseSizeList(flags.k_list, "K"));
  LEXIMARK_ASSIGN_OR_RETURN(std::vector<double> thresholds,
                            ParseDoubleList(flags.thresholds, "threshold"));
  LEXIMARK_ASSIGN_OR_RETURN(LexicalSetup setup,
                            SetUpLexical(flags.lexical, &inputs));
  LEXIMARK_ASSIGN_OR_RETURN(std::vector<Document> corpus,
                            LoadCorpusInput(flags.corpus, &inputs));
  LEXIMARK_ASSIGN_OR_RETURN(
      std::unique_ptr<EmbeddingProvider> embeddings,
      MakeEmbeddingProvider(flags.lexical.embedder, flags.lexical.bridge));

  const bool scoring = flags.scoring.provider != "none";
  ScoringSetup scorer;
  std::vector<MethodSpec> score_methods;
  if (scoring) {
    LEXIMARK_ASSIGN_OR_RETURN(scorer, SetUpScoring(flags.scoring, &inputs));
    LEXIMARK_ASSIGN_OR_RETURN(MethodSpec spec,
                              ParseMethodSpec(flags.score_method));
    score_methods.push_back(spec);
  }

  // With labels, only members are watermarked, as in a training-set audit.
  const bool labeled = std::any_of(corpus.begin(), corpus.end(), [](const Document& d) {
    return d.label == Label::kMember;
  });
  std::vector<Document> targets;
  std::vector<Document> others;
  for (const Document& doc : corpus) {
    (labeled && doc.label != Label::kMember ? others : targets).push_back(doc);
  }

  CsvRow header = {"k", "auroc", "mean_bleu"};
  for (double t : thresholds) header.push_back(StrCat("cos_", FormatDouble(t)));
  header.push_back("n_pairs");
  header.push_back("substitutions");
  std::string csv = CsvLine(header) + "\n";

  for (std::size_t k : ks) {
    EmbedConfig config = setup.config;
    config.k = k;
    config.watermark_fraction = 1.0;
    LEXIMARK_RETURN_IF_ERROR(config.Validate());
    LEXIMARK_ASSIGN_OR_RETURN(
        CorpusEmbedResult result,
        EmbedCorpus(targets, setup.table, setup.policy, setup.providers(),
                    config));
    LEXIMARK_ASSIGN_OR_RETURN(
        SemanticReport report,
        ComputeSemanticReport(StrCat("k=", k), targets, result.documents,
                              *embeddings, thresholds));
    std::string auroc;
    if (scoring) {
      std::vector<Document> scored_corpus = result.documents;
      scored_corpus.insert(scored_corpus.end(), others.begin(), others.end());
      LEXIMARK_ASSIGN_OR_RETURN(
          std::vector<ScoredDocument> scored,
          ScoreCorpus(scored_corpus, *scorer.provider, score_methods,
                      flags.scoring.batch_size));
      std::vector<double> members;
      std::vector<double> nonmembers;
      const std::string name = score_methods.front().Name();
      for (const ScoredDocument& doc : scored) {
        if (doc.label == Label::kMember) members.push_back(doc.scores.at(name));
        if (doc.label == Label::kNonmember) {
          nonmembers.push_back(doc.scores.at(name));
        }
      }
      LEXIMARK_ASSIGN_OR_RETURN(double value, Auroc(members, nonmembers));
      auroc = FormatDouble(value);
    }
    CsvRow row = {StrCat(k), auroc, FormatDouble(report.mean_bleu)};
    for (const auto& [t, share] : report.cos_fraction) {
      row.push_back(FormatDouble(share));
    }
    row.push_back(StrCat(report.n_pairs));
    row.push_back(StrCat(result.log.records.size()));
    csv += CsvLine(row) + "\n";
  }

  std::vector<std::string> outputs;
  LEXIMARK_RETURN_IF_ERROR(WriteOutput(flags.out, csv, &outputs));
  LEXIMARK_RETURN_IF_ERROR(EmitManifest(ctx, flags.manifest, flags.out,
                                        flags.lexical.seed, inputs, outputs,
                                        started));
  ctx.out << csv;
  return absl::OkStatus();
}

// ---------------------------------------------------------------------------
// bench-synonyms
// ---------------------------------------------------------------------------

struct BenchFlags {
  std::string corpus;
  std::string out;
  std::string methods = "tsv,wndb";
  std::size_t warmup = 1;
  LexicalFlags lexical;
};

absl::Status RunBenchSynonyms(const BenchFlags& flags, Context& ctx) {
  std::vector<std::string> inputs;
  LEXIMARK_ASSIGN_OR_RETURN(std::vector<Document> corpus,
                            LoadCorpusInput(flags.corpus, &inputs));
  if (flags.warmup >= corpus.size()) {
    return absl::InvalidArgumentError(StrCat(
        "--warmup ", flags.warmup, " leaves no timed documents out of ",
        corpus.size()));
  }
  EmbedConfig config = ConfigFrom(flags.lexical);
  LEXIMARK_RETURN_IF_ERROR(config.Validate());
  LEXIMARK_ASSIGN_OR_RETURN(
      FrequencyTableLoad load,
      LoadFrequencyTable(flags.lexical.freq_table, flags.lexical.oov_cap));
  ExclusionPolicy policy = ExclusionPolicy::Default();
  if (!flags.lexical.stoplist.empty()) {
    LEXIMARK_ASSIGN_OR_RETURN(policy.function_words,
                              LoadStoplist(flags.lexical.stoplist));
  }
  std::unique_ptr<EmbeddingProvider> embeddings;
  if (config.similarity_threshold.has_value()) {
    LEXIMARK_ASSIGN_OR_RETURN(embeddings,
                              MakeEmbeddingProvider(flags.lexical.embedder,
                                                    flags.lexical.bridge));
  }

  std::string csv = "method,mean_seconds_per_doc,documents,status\n";
  for (std::string_view method : SplitSkipEmpty(flags.methods, ", ")) {
    LEXIMARK_ASSIGN_OR_RETURN(SynonymSource source, ParseSynonymSource(method));
    config.synonym_source = source;
    auto provider = MakeSynonymProvider(method, flags.lexical.synonyms,
                                        flags.lexical.bridge, nullptr);
    if (!provider.ok()) {
      if (provider.status().code() == absl::StatusCode::kInvalidArgument &&
          (source == SynonymSource::kTsvStub || source == SynonymSource::kWndb)) {
        return provider.status();
      }
      csv += CsvLine({std::string(method), "", "0",
                      StrCat("failed: ", provider.status().message())}) +
             "\n";
      continue;
    }
    const EmbedProviders providers{provider->get(), embeddings.get()};
    double total = 0.0;
    std::size_t timed = 0;
    absl::Status failure;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      SubstitutionCache cache;
      const auto begin = std::chrono::steady_clock::now();
      auto result =
          EmbedDocument(corpus[i], load.table, policy, providers, config, cache);
      const auto end = std::chrono::steady_clock::now();
      if (!result.ok()) {
        failure = result.status();
        break;
      }
      if (i < flags.warmup) continue;
      total += std::chrono::duration<double>(end - begin).count();
      ++timed;
    }
    if (!failure.ok()) {
      csv += CsvLine({std::string(method), "", StrCat(timed),
                      StrCat("failed: ", failure.message())}) +
             "\n";
      continue;
    }
    csv += CsvLine({std::string(method),
                    absl::StrFormat("%.9f", total / static_cast<double>(timed)),
                    StrCat(timed), "ok"}) +
           "\n";
  }
  if (!flags.out.empty()) {
    LEXIMARK_RETURN_IF_ERROR(WriteFile(flags.out, csv));
  }
  ctx.out << csv;
  return absl::OkStatus();
}

// ---------------------------------------------------------------------------
// attack / baseline
// ---------------------------------------------------------------------------

struct TransformFlags {
  std::string corpus;
  std::string out;
  std::string manifest;
  std::string mode;
  bool remove = false;
  std::string insertions;
  std::string homoglyphs;
  std::size_t seq_length = 10;
  std::size_t seq_count = 1;
  std::size_t k = 5;
  std::uint64_t seed = 0;
  std::string freq_table;
  SynonymFlags synonyms;
  BridgeFlags bridge;
};

absl::Status RunTransform(const TransformFlags& flags, Context& ctx) {
  const std::string started = UtcTimestamp();
  static constexpr std::string_view kModes[] = {"unicode", "randomseq",
                                                "random-syn", "targeted"};
  if (std::find(std::begin(kModes), std::end(kModes), flags.mode) ==
      std::end(kModes)) {
    return absl::InvalidArgumentError(StrCat(
        "unknown mode '", flags.mode,
        "' (unicode, randomseq, random-syn, targeted)"));
  }
  const bool is_attack = flags.mode == "random-syn" || flags.mode == "targeted";
  if (flags.remove && is_attack) {
    return absl::InvalidArgumentError("--remove applies to unicode and randomseq");
  }
  if (flags.k < 1) return absl::InvalidArgumentError("K must be at least 1");
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  LEXIMARK_ASSIGN_OR_RETURN(std::vector<Document> corpus,
                            LoadCorpusInput(flags.corpus, &inputs));

  std::vector<Document> result;
  result.reserve(corpus.size());
  if (flags.mode == "unicode") {
    HomoglyphMap map = HomoglyphMap::Default();
    if (!flags.homoglyphs.empty()) {
      LEXIMARK_ASSIGN_OR_RETURN(map, HomoglyphMap::Load(flags.homoglyphs));
      inputs.push_back(flags.homoglyphs);
    }
    for (Document doc : corpus) {
      doc.text = flags.remove ? RemoveUnicode(doc.text, map)
                              : WatermarkUnicode(doc.text, map);
      result.push_back(std::move(doc));
    }
  } else if (flags.mode == "randomseq") {
    if (flags.remove) {
      if (flags.insertions.empty()) {
        return absl::InvalidArgumentError("--remove needs --insertions");
      }
      LEXIMARK_ASSIGN_OR_RETURN(std::string log, ReadFile(flags.insertions));
      inputs.push_back(flags.insertions);
      LEXIMARK_ASSIGN_OR_RETURN(std::vector<SequenceInsertion> logged,
                                ParseInsertions(log));
      for (const Document& doc : corpus) {
        LEXIMARK_ASSIGN_OR_RETURN(Document restored,
                                  RemoveRandomSequences(doc, logged));
        result.push_back(std::move(restored));
      }
    } else {
      if (flags.seq_length < 1 || flags.seq_count < 1) {
        return absl::InvalidArgumentError(
            "--seq-length and --seq-count must be positive");
      }
      std::vector<SequenceInsertion> logged;
      for (const Document& doc : corpus) {
        RandomSequenceResult marked = WatermarkRandomSequence(
            doc, flags.seed, flags.seq_length, flags.seq_count);
        logged.insert(logged.end(), marked.insertions.begin(),
                      marked.insertions.end());
        result.push_back(std::move(marked.document));
      }
      const std::string log = flags.insertions.empty()
                                  ? flags.out + ".insertions.jsonl"
                                  : flags.insertions;
      LEXIMARK_RETURN_IF_ERROR(
          WriteOutput(log, SerializeInsertions(logged), &outputs));
    }
  } else {
    AttackConfig config;
    config.mode = flags.mode == "targeted" ? AttackMode::kTargetedLowEntropy
                                           : AttackMode::kRandomSynonym;
    config.k = flags.k;
    config.seed = flags.seed;
    config.top_n_candidates = flags.synonyms.top_n;
    FrequencyTable table;
    if (config.mode == AttackMode::kTargetedLowEntropy) {
      if (flags.freq_table.empty()) {
        return absl::InvalidArgumentError("targeted attack needs --freq-table");
      }
      LEXIMARK_ASSIGN_OR_RETURN(FrequencyTableLoad load,
                                LoadFrequencyTable(flags.freq_table));
      table = std::move(load.table);
      inputs.push_back(flags.freq_table);
    }
    LEXIMARK_ASSIGN_OR_RETURN(
        std::unique_ptr<SynonymProvider> provider,
        MakeSynonymProvider(flags.synonyms.source, flags.synonyms,
                            flags.bridge, &inputs));
    std::size_t replaced = 0;
    for (const Document& doc : corpus) {
      LEXIMARK_ASSIGN_OR_RETURN(AttackResult attacked,
                                RunAttack(doc, config, table, *provider));
      replaced += attacked.replaced;
      result.push_back(std::move(attacked.document));
    }
    ctx.out << "replaced " << replaced << " word occurrences\n";
  }

  LEXIMARK_RETURN_IF_ERROR(
      WriteOutput(flags.out, SerializeCorpus(result), &outputs));
  std::rotate(outputs.rbegin(), outputs.rbegin() + 1, outputs.rend());
  return EmitManifest(ctx, flags.manifest, flags.out, flags.seed, inputs,
                      outputs, started);
}

// ---------------------------------------------------------------------------
// semantic / perplexity-ratio
// ---------------------------------------------------------------------------

struct SemanticFlags {
  std::string original;
  std::string watermarked;
  std::string config = "default";
  std::string thresholds = "0.7,0.8,0.9,0.95";
  std::string out;
  EmbedderFlags embedder;
  BridgeFlags bridge;
};

absl::Status RunSemantic(const SemanticFlags& flags, Context& ctx) {
  LEXIMARK_ASSIGN_OR_RETURN(std::vector<double> thresholds,
                            ParseDoubleList(flags.thresholds, "threshold"));
  LEXIMARK_ASSIGN_OR_RETURN(std::vector<Document> original,
                            LoadCorpus(flags.original));
  LEXIMARK_ASSIGN_OR_RETURN(std::vector<Document> watermarked,
                            LoadCorpus(flags.watermarked));
  LEXIMARK_ASSIGN_OR_RETURN(std::unique_ptr<EmbeddingProvider> embeddings,
                            MakeEmbeddingProvider(flags.embedder, flags.bridge));
  LEXIMARK_ASSIGN_OR_RETURN(
      SemanticReport report,
      ComputeSemanticReport(flags.config, original, watermarked, *embeddings,
                            thresholds));
  const SemanticReport reports[] = {report};
  const std::string csv = SerializeSemanticReports(reports);
  if (!flags.out.empty()) LEXIMARK_RETURN_IF_ERROR(WriteFile(flags.out, csv));
  ctx.out << csv;
  return absl::OkStatus();
}

struct PerplexityRatioFlags {
  std::string original_dump;
  std::string finetuned_dump;
};

absl::Status RunPerplexityRatio(const PerplexityRatioFlags& flags,
                                Context& ctx) {
  LEXIMARK_ASSIGN_OR_RETURN(DumpLogProbProvider original,
                            DumpLogProbProvider::Load(flags.original_dump));
  LEXIMARK_ASSIGN_OR_RETURN(DumpLogProbProvider finetuned,
                            DumpLogProbProvider::Load(flags.finetuned_dump));
  const std::vector<DocumentLogProbs> a = original.records();
  const std::vector<DocumentLogProbs> b = finetuned.records();
  LEXIMARK_ASSIGN_OR_RETURN(double ppl_original, CorpusPerplexity(a));
  LEXIMARK_ASSIGN_OR_RETURN(double ppl_finetuned, CorpusPerplexity(b));
  LEXIMARK_ASSIGN_OR_RETURN(double ratio, PerplexityRatio(a, b));
  ctx.out << "ppl_original,ppl_finetuned,perplexity_ratio\n"
          << FormatDouble(ppl_original) << "," << FormatDouble(ppl_finetuned)
          << "," << FormatDouble(ratio) << "\n";
  return absl::OkStatus();
}

}  // namespace

int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return 0;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kFailedPrecondition:
    case absl::StatusCode::kOutOfRange:
    case absl::StatusCode::kAlreadyExists:
      return 2;
    case absl::StatusCode::kUnavailable:
    case absl::StatusCode::kDeadlineExceeded:
    case absl::StatusCode::kInternal:
    case absl::StatusCode::kResourceExhausted:
      return 3;
    default:
      return 1;
  }
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Dataset watermarking by entropy-guided synonym substitution",
               "leximark"};
  app.set_version_flag("--version", LEXIMARK_VERSION);
  app.require_subcommand(1);

  Context ctx{out, err, {"leximark"}};
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i].starts_with("--bridge-token=")) {
      ctx.command_line.push_back("--bridge-token=<redacted>");
    } else if (i > 0 && args[i - 1] == "--bridge-token") {
      ctx.command_line.push_back("<redacted>");
    } else {
      ctx.command_line.push_back(args[i]);
    }
  }
  std::function<absl::Status()> action;

  EmbedFlags embed;
  {
    CLI::App* sub = app.add_subcommand("embed", "Watermark a JSONL corpus");
    sub->set_config("--config", "", "key = value file mirroring the flags");
    sub->add_option("--corpus", embed.corpus, "Input corpus (JSONL)")->required();
    sub->add_option("--out", embed.out, "Watermarked corpus (JSONL)")->required();
    sub->add_option("--log", embed.log, "Substitution log (default <out>.log.jsonl)");
    sub->add_option("--manifest", embed.manifest,
                    "Run manifest (default <out>.manifest.json)");
    sub->add_option("--fraction", embed.fraction,
                    "Share of documents to watermark")
        ->capture_default_str();
    sub->add_option("--combine", embed.combine,
                    "Extra watermarks applied after substitution: unicode, randomseq");
    sub->add_option("--homoglyphs", embed.homoglyphs,
                    "Homoglyph map (ascii<TAB>hex) for unicode");
    sub->add_option("--seq-length", embed.seq_length, "Random sequence length")
        ->capture_default_str();
    sub->add_option("--seq-count", embed.seq_count, "Random sequences per document")
        ->capture_default_str();
    AddLexicalFlags(sub, &embed.lexical);
    sub->callback([&, sub] {
      ctx.command = sub;
      action = [&] { return RunEmbed(embed, ctx); };
    });
  }

  ScoreFlags score;
  {
    CLI::App* sub = app.add_subcommand("score", "Per-document MIA scores");
    sub->set_config("--config", "", "key = value file mirroring the flags");
    sub->add_option("--corpus", score.corpus, "Corpus (JSONL, labels optional)")
        ->required();
    sub->add_option("--out", score.out, "Score file (CSV)")->required();
    sub->add_option("--manifest", score.manifest,
                    "Run manifest (default <out>.manifest.json)");
    sub->add_option("--methods", score.methods,
                    "ppl, zlib, min_k_<k>, min_kpp_<k>")
        ->capture_default_str();
    sub->add_option("--k-pct", score.k_pct, "Percentage for bare min_k/min_kpp")
        ->capture_default_str();
    AddScoringFlags(sub, &score.scoring);
    AddBridgeFlags(sub, &score.scoring.bridge);
    sub->callback([&, sub] {
      ctx.command = sub;
      action = [&] { return RunScore(score, ctx); };
    });
  }

  ReportFlags report;
  {
    CLI::App* sub = app.add_subcommand("report", "AUROC and TPR@FPR per method");
    sub->set_config("--config", "", "key = value file mirroring the flags");
    sub->add_option("--scores", report.scores, "Score file (CSV)")->required();
    sub->add_option("--methods", report.methods, "Methods (default: all)");
    sub->add_option("--fpr", report.fpr, "FPR levels")->capture_default_str();
    sub->add_option("--out", report.out, "Report (CSV)");
    sub->add_option("--manifest", report.manifest, "Run manifest");
    sub->callback([&, sub] {
      ctx.command = sub;
      action = [&] { return RunReport(report, ctx); };
    });
  }

  DatasetTestFlags dataset;
  {
    CLI::App* sub = app.add_subcommand(
        "dataset-test", "Welch t-test sweep over group sizes");
    sub->set_config("--config", "", "key = value file mirroring the flags");
    sub->add_option("--scores", dataset.scores, "Score file (CSV)")->required();
    sub->add_option("--method", dataset.method,
                    "Score column (default: first)");
    sub->add_option("--group-sizes", dataset.group_sizes,
                    "Sizes: a:b, a:b:step or a list")
        ->capture_default_str();
    sub->add_option("--reps", dataset.reps, "Repetitions per size")
        ->capture_default_str();
    sub->add_option("--seed", dataset.seed, "Sampling seed")->capture_default_str();
    sub->add_option("--threads", dataset.threads, "Worker threads")
        ->capture_default_str();
    sub->add_option("--member-subset-fraction", dataset.member_subset_fraction,
                    "Share of the member pool kept before sampling")
        ->capture_default_str();
    sub->add_option("--out", dataset.out, "Sweep (CSV); stdout when absent");
    sub->add_option("--manifest", dataset.manifest, "Run manifest");
    sub->callback([&, sub] {
      ctx.command = sub;
      action = [&] { return RunDatasetTest(dataset, ctx); };
    });
  }

  SweepKFlags sweep;
  {
    CLI::App* sub = app.add_subcommand(
        "sweep-k", "Semantic metrics (and optional AUROC) across K");
    sub->set_config("--config", "", "key = value file mirroring the flags");
    sub->add_option("--corpus", sweep.corpus, "Corpus (JSONL)")->required();
    sub->add_option("--out", sweep.out, "Sweep (CSV)")->required();
    sub->add_option("--manifest", sweep.manifest, "Run manifest");
    sub->add_option("--k-list", sweep.k_list, "Values of K")->capture_default_str();
    sub->add_option("--thresholds", sweep.thresholds, "Cosine thresholds")
        ->capture_default_str();
    sub->add_option("--score-method", sweep.score_method,
                    "MIA method behind the AUROC column")
        ->capture_default_str();
    AddLexicalFlags(sub, &sweep.lexical);
    sweep.scoring.provider = "none";
    AddScoringFlags(sub, &sweep.scoring, "score-");
    sub->callback([&, sub] {
      ctx.command = sub;
      sweep.scoring.bridge = sweep.lexical.bridge;
      action = [&] { return RunSweepK(sweep, ctx); };
    });
  }

  BenchFlags bench;
  {
    CLI::App* sub = app.add_subcommand(
        "bench-synonyms", "Mean watermarking time per document by source");
    sub->add_option("--corpus", bench.corpus, "Corpus (JSONL)")->required();
    sub->add_option("--out", bench.out, "Timings (CSV)");
    sub->add_option("--methods", bench.methods, "Synonym sources to time")
        ->capture_default_str();
    sub->add_option("--warmup", bench.warmup, "Untimed leading documents")
        ->capture_default_str();
    AddLexicalFlags(sub, &bench.lexical);
    sub->callback([&, sub] {
      ctx.command = sub;
      action = [&] { return RunBenchSynonyms(bench, ctx); };
    });
  }

  TransformFlags transform;
  for (const char* name : {"attack", "baseline"}) {
    CLI::App* sub = app.add_subcommand(
        name, "Baseline watermarks and removal attacks");
    sub->set_config("--config", "", "key = value file mirroring the flags");
    sub->add_option("--corpus", transform.corpus, "Corpus (JSONL)")->required();
    sub->add_option("--out", transform.out, "Output corpus (JSONL)")->required();
    sub->add_option("--manifest", transform.manifest, "Run manifest");
    sub->add_option("--mode", transform.mode,
                    "unicode, randomseq, random-syn or targeted")
        ->required();
    sub->add_flag("--remove", transform.remove,
                  "Undo a unicode or randomseq watermark");
    sub->add_option("--insertions", transform.insertions,
                    "Random-sequence log (written, or read with --remove)");
    sub->add_option("--homoglyphs", transform.homoglyphs,
                    "Homoglyph map (ascii<TAB>hex)");
    sub->add_option("--seq-length", transform.seq_length, "Random sequence length")
        ->capture_default_str();
    sub->add_option("--seq-count", transform.seq_count,
                    "Random sequences per document")
        ->capture_default_str();
    sub->add_option("--k", transform.k, "Words attacked per sentence")
        ->capture_default_str();
    sub->add_option("--seed", transform.seed, "Seed")->capture_default_str();
    sub->add_option("--freq-table", transform.freq_table,
                    "Frequency table for the targeted attack");
    AddSynonymFlags(sub, &transform.synonyms);
    AddBridgeFlags(sub, &transform.bridge);
    sub->callback([&, sub] {
      ctx.command = sub;
      action = [&] { return RunTransform(transform, ctx); };
    });
  }

  SemanticFlags semantic;
  {
    CLI::App* sub = app.add_subcommand(
        "semantic", "BLEU and cosine-threshold fractions of a watermarked corpus");
    sub->add_option("--original", semantic.original, "Original corpus")->required();
    sub->add_option("--watermarked", semantic.watermarked, "Watermarked corpus")
        ->required();
    sub->add_option("--config-name", semantic.config, "Row label")
        ->capture_default_str();
    sub->add_option("--thresholds", semantic.thresholds, "Cosine thresholds")
        ->capture_default_str();
    sub->add_option("--out", semantic.out, "Report (CSV)");
    AddEmbedderFlags(sub, &semantic.embedder);
    AddBridgeFlags(sub, &semantic.bridge);
    sub->callback([&, sub] {
      ctx.command = sub;
      action = [&] { return RunSemantic(semantic, ctx); };
    });
  }

  PerplexityRatioFlags ratio;
  {
    CLI::App* sub = app.add_subcommand(
        "perplexity-ratio", "100 * PPL(original model) / PPL(fine-tuned model)");
    sub->add_option("--original-dump", ratio.original_dump,
                    "Log-probs of the original model")
        ->required();
    sub->add_option("--finetuned-dump", ratio.finetuned_dump,
                    "Log-probs of the fine-tuned model")
        ->required();
    sub->callback([&, sub] {
      ctx.command = sub;
      action = [&] { return RunPerplexityRatio(ratio, ctx); };
    });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }
  const absl::Status status = action();
  if (!status.ok()) err << "error: " << status.message() << "\n";
  return ExitCodeFor(status);
}

}  // namespace leximark::cli
