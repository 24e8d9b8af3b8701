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

// Runs the acceptance checks and prints one PASS/FAIL line per criterion.
// Exit status is 0 only when every criterion passes within its time limit.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "absl/strings/str_format.h"
#include "cli.h"
#include "leximark/baselines.h"
#include "leximark/corpus.h"
#include "leximark/csv.h"
#include "leximark/detect.h"
#include "leximark/embedder.h"
#include "leximark/entropy.h"
#include "leximark/metrics.h"
#include "leximark/mia.h"
#include "leximark/providers.h"
#include "leximark/random.h"
#include "leximark/strings.h"
#include "leximark/wordnet.h"
#include "manifest.h"
#include "oracles.h"
#include "test_util.h"

namespace leximark::acceptance {
namespace {

using ::leximark::testing::TestDataPath;

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome Fail(std::string detail) { return {false, std::move(detail)}; }

std::string Describe(const absl::Status& status) {
  return std::string(status.message());
}

// A directory under the system temp dir that is removed on exit.
class TempDir {
 public:
  TempDir() {
    std::random_device device;
    path_ = std::filesystem::temp_directory_path() /
            absl::StrFormat("leximark_acceptance_%08x", device());
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string File(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream(path, std::ios::binary) << contents;
}

std::string AsciiLower(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

// ---------------------------------------------------------------------------
// Figure fixtures
// ---------------------------------------------------------------------------

struct StubSetup {
  FrequencyTable table;
  std::unique_ptr<LexiconSynonymProvider> synonyms;
};

absl::StatusOr<StubSetup> LoadStub(const std::string& freq,
                                   const std::string& lexicon) {
  StubSetup setup;
  auto table = LoadFrequencyTable(TestDataPath(freq));
  if (!table.ok()) return table.status();
  setup.table = std::move(table->table);
  auto lex = LoadTsvLexicon(TestDataPath(lexicon));
  if (!lex.ok()) return lex.status();
  setup.synonyms = std::make_unique<LexiconSynonymProvider>(
      std::move(lex->lexicon));
  return setup;
}

Outcome ReproduceFigure(const std::string& freq, const std::string& lexicon,
                        const std::string& input, const std::string& want) {
  auto setup = LoadStub(freq, lexicon);
  if (!setup.ok()) return Fail(Describe(setup.status()));
  EmbedConfig config;
  config.k = 3;
  SubstitutionCache cache;
  auto result = EmbedDocument({"fig", input, {}, {}}, setup->table,
                              ExclusionPolicy::Default(),
                              {setup->synonyms.get(), nullptr}, config, cache);
  if (!result.ok()) return Fail(Describe(result.status()));
  const std::string& got = result->document.text;
  if (got != want) return Fail("got \"" + got + "\"");
  return {true, "\"" + got + "\""};
}

Outcome FigureOne() {
  return ReproduceFigure("figure1_freq.tsv", "figure1_lexicon.tsv",
                         "The quick brown fox jumps over the lazy dog",
                         "The speedy brown fox leaps over the sluggish dog");
}

Outcome FigureTwo() {
  return ReproduceFigure(
      "figure2_freq.tsv", "figure2_lexicon.tsv",
      "The e-commerce platform leverages AI to personalize product "
      "recommendations.",
      "The e-commerce platform utilizes AI to customize item "
      "recommendations.");
}

// ---------------------------------------------------------------------------
// Randomized corpus with a matching frequency table and lexicon
// ---------------------------------------------------------------------------

struct Synthetic {
  std::map<std::string, double> probabilities;
  std::map<std::string, std::vector<std::string>> synonyms;
  std::vector<Document> docs;

  std::string FrequencyTsv() const {
    std::string out = "# synthetic\n";
    for (const auto& [word, p] : probabilities) {
      out += word + "\t" + absl::StrFormat("%.17g", p) + "\n";
    }
    return out;
  }
  std::string LexiconTsv() const {
    std::string out;
    for (const auto& [word, list] : synonyms) {
      out += word + "\t";
      for (std::size_t i = 0; i < list.size(); ++i) {
        out += (i ? "," : "") + list[i];
      }
      out += "\n";
    }
    return out;
  }
};

Synthetic MakeSynthetic(std::size_t n_docs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  auto chance = [&](double p) {
    return std::uniform_real_distribution<double>(0, 1)(rng) < p;
  };
  Synthetic s;
  std::set<std::string> seen;
  std::vector<std::string> vocab;
  while (vocab.size() < 3000) {
    std::string w;
    const int len = uniform(3, 10);
    for (int i = 0; i < len; ++i) w.push_back('a' + uniform(0, 25));
    if (seen.insert(w).second) vocab.push_back(w);
  }
  for (const std::string& w : vocab) {
    if (chance(0.85)) {
      const double exponent =
          std::uniform_real_distribution<double>(-7.0, -2.0)(rng);
      s.probabilities[w] = std::pow(10.0, exponent);
    }
  }
  for (const std::string& w : vocab) {
    if (!chance(0.7)) continue;
    std::vector<std::string> list;
    const int n = uniform(1, 5);
    for (int i = 0; i < n; ++i) {
      switch (uniform(0, 9)) {
        case 0:
          list.push_back(vocab[uniform(0, vocab.size() - 1)] + "-" +
                         vocab[uniform(0, vocab.size() - 1)]);
          break;
        case 1:
          list.push_back(w);  // self, must be ignored
          break;
        case 2:
          list.push_back("zq" + w);  // out of vocabulary
          break;
        default:
          list.push_back(vocab[uniform(0, vocab.size() - 1)]);
      }
    }
    s.synonyms[w] = list;
  }
  const std::vector<std::string> function_words = {"the", "of",  "and", "to",
                                                   "in",  "was", "it",  "for"};
  const std::vector<std::string> odd_tokens = {"42", "café", "naïve", "x2",
                                               "Straße", "--", "it's"};
  const std::vector<std::string> enders = {".", "!", "?", "."};
  for (std::size_t d = 0; d < n_docs; ++d) {
    std::string text;
    const int sentences = uniform(1, 6);
    for (int si = 0; si < sentences; ++si) {
      const int words = uniform(3, 18);
      for (int wi = 0; wi < words; ++wi) {
        std::string token;
        const int kind = uniform(0, 19);
        if (kind < 3) {
          token = function_words[uniform(0, function_words.size() - 1)];
        } else if (kind == 3) {
          token = odd_tokens[uniform(0, odd_tokens.size() - 1)];
        } else {
          // A small per-document pool makes repeated words common.
          token = vocab[(d * 37 + uniform(0, 60)) % vocab.size()];
          if (chance(0.1)) token[0] = static_cast<char>(token[0] - 'a' + 'A');
        }
        if (wi == 0 && token[0] >= 'a' && token[0] <= 'z') {
          token[0] = static_cast<char>(token[0] - 'a' + 'A');
        }
        if (wi > 0) text += chance(0.1) ? ", " : " ";
        text += token;
      }
      text += enders[uniform(0, enders.size() - 1)];
      if (si + 1 < sentences) text += chance(0.2) ? "\n" : " ";
    }
    s.docs.push_back({absl::StrFormat("syn-%05d", d), text, {}, {}});
  }
  return s;
}

absl::StatusOr<FrequencyTable> TableOf(const Synthetic& s) {
  auto load = ParseFrequencyTable(s.FrequencyTsv());
  if (!load.ok()) return load.status();
  return std::move(load->table);
}

absl::StatusOr<Lexicon> LexiconOf(const Synthetic& s) {
  auto load = ParseTsvLexicon(s.LexiconTsv());
  if (!load.ok()) return load.status();
  return std::move(load->lexicon);
}

Outcome EntropyMonotonicity() {
  const Synthetic s = MakeSynthetic(1000, 20261016);
  auto table = TableOf(s);
  if (!table.ok()) return Fail(Describe(table.status()));
  auto lexicon = LexiconOf(s);
  if (!lexicon.ok()) return Fail(Describe(lexicon.status()));
  LexiconSynonymProvider synonyms(*lexicon);
  HashingEmbeddingProvider embeddings(512);

  // Independent self-information, -log2 p, with the default OOV cap.
  auto entropy = [&](const std::string& word) {
    auto it = s.probabilities.find(AsciiLower(word));
    return it == s.probabilities.end() ? -std::log2(1e-9)
                                       : -std::log2(it->second);
  };

  std::size_t records = 0, violations = 0, over_k = 0, wrong_entropy = 0;
  constexpr std::size_t kChunks = 10;
  const std::size_t chunk = s.docs.size() / kChunks;
  for (std::size_t c = 0; c < kChunks; ++c) {
    EmbedConfig config;
    config.k = 1 + c % 7;
    config.threads = c % 3 == 0 ? 4 : 1;
    config.seed = c;
    if (c % 2 == 0) config.similarity_threshold = 0.3;
    const ExclusionPolicy policy =
        c % 4 == 3 ? ExclusionPolicy::None() : ExclusionPolicy::Default();
    const std::span<const Document> docs(s.docs.data() + c * chunk, chunk);
    auto result = EmbedCorpus(docs, *table, policy, {&synonyms, &embeddings},
                              config);
    if (!result.ok()) return Fail(Describe(result.status()));
    std::map<std::pair<std::string, std::size_t>, std::set<std::string>>
        per_sentence;
    for (const SubstitutionRecord& r : result->log.records) {
      ++records;
      if (!(r.replacement_entropy > r.original_entropy)) ++violations;
      if (std::abs(r.original_entropy - entropy(r.original)) > 1e-9 ||
          std::abs(r.replacement_entropy - entropy(r.replacement)) > 1e-9) {
        ++wrong_entropy;
      }
      per_sentence[{r.doc_id, r.sentence_index}].insert(AsciiLower(r.original));
    }
    for (const auto& [key, words] : per_sentence) {
      if (words.size() > config.k) ++over_k;
    }
  }
  const std::string detail = absl::StrFormat(
      "%d records, %d entropy violations, %d sentences over K, %d entropy "
      "mismatches",
      records, violations, over_k, wrong_entropy);
  return {records > 1000 && violations == 0 && over_k == 0 &&
              wrong_entropy == 0,
          detail};
}

// ---------------------------------------------------------------------------
// Kernel oracles
// ---------------------------------------------------------------------------

Outcome KernelOracles() {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> lp(-20.0, 0.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto uniform = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };

  int min_k_mismatch = 0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> values(uniform(1, 32));
    for (double& v : values) v = lp(rng);
    // Coarse grid half of the time to force ties.
    if (i % 2) {
      for (double& v : values) v = std::round(v);
    }
    std::vector<TokenLogProb> tokens = {{"<s>", 0.0, 0.0, 0.0, 0, false}};
    for (double v : values) tokens.push_back({"w", v, 0.0, 1.0, 1, true});
    const double k = i % 3 ? uniform(1, 100) : uniform(1, 1000) / 10.0;
    auto got = ScoreMinK(tokens, k);
    if (!got.ok() || *got != oracle::MinKMean(values, k)) ++min_k_mismatch;
  }

  double auroc_err = 0.0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> m(uniform(1, 80)), n(uniform(1, 80));
    for (double& v : m) v = i % 2 ? uniform(0, 6) : 0.4 + normal(rng);
    for (double& v : n) v = i % 2 ? uniform(0, 5) : normal(rng);
    auto got = Auroc(m, n);
    if (!got.ok()) return Fail(Describe(got.status()));
    auroc_err = std::max(auroc_err, std::abs(*got - oracle::PairwiseAuroc(m, n)));
  }

  double welch_err = 0.0;
  for (int i = 0; i < 100; ++i) {
    std::vector<double> m(uniform(2, 120)), n(uniform(2, 120));
    const double shift = std::uniform_real_distribution<double>(-1, 2)(rng);
    const double sd_m = std::uniform_real_distribution<double>(0.1, 4)(rng);
    const double sd_n = std::uniform_real_distribution<double>(0.1, 4)(rng);
    for (double& v : m) v = shift + sd_m * normal(rng);
    for (double& v : n) v = sd_n * normal(rng);
    auto got = WelchTTest(m, n);
    if (!got.ok()) return Fail(Describe(got.status()));
    welch_err = std::max(
        welch_err, std::abs(got->p_value - oracle::Welch(m, n).p_one_sided));
  }

  const std::vector<std::string> vocab = {"the", "a",   "cat", "dog", "sat",
                                          "on",  "mat", "ran", "far", "."};
  double bleu_err = 0.0;
  for (int i = 0; i < 50; ++i) {
    std::vector<std::string> ref(uniform(1, 30));
    for (std::string& w : ref) w = vocab[uniform(0, vocab.size() - 1)];
    std::vector<std::string> cand = ref;
    for (std::string& w : cand) {
      if (uniform(0, 3) == 0) w = vocab[uniform(0, vocab.size() - 1)];
    }
    cand.resize(std::max<std::size_t>(1, cand.size() - uniform(0, 3)));
    std::string a, b;
    for (const std::string& w : cand) a += w + " ";
    for (const std::string& w : ref) b += w + " ";
    auto got = Bleu(a, b);
    if (!got.ok()) return Fail(Describe(got.status()));
    bleu_err = std::max(bleu_err, std::abs(*got - oracle::Bleu(a, b)));
  }

  const std::string detail = absl::StrFormat(
      "min_k mismatches %d/1000, max |dAUROC| %.3g, max |dp| %.3g, "
      "max |dBLEU| %.3g",
      min_k_mismatch, auroc_err, welch_err, bleu_err);
  return {min_k_mismatch == 0 && auroc_err <= 1e-9 && welch_err <= 1e-9 &&
              bleu_err <= 1e-6,
          detail};
}

// ---------------------------------------------------------------------------
// Dataset inference
// ---------------------------------------------------------------------------

// First size whose mean p is below 0.05, or 0.
std::size_t Threshold(const std::vector<std::pair<std::size_t, double>>& curve) {
  for (const auto& [size, p] : curve) {
    if (p < 0.05) return size;
  }
  return 0;
}

std::vector<std::pair<std::size_t, double>> OracleCurve(double shift,
                                                        std::size_t max_size) {
  std::vector<std::pair<std::size_t, double>> curve;
  for (std::size_t n = 2; n <= max_size; ++n) {
    const double p = oracle::MonteCarloMeanP(n, shift, 4000, 1000 + n);
    curve.emplace_back(n, p);
    if (p < 0.05) break;
  }
  return curve;
}

absl::StatusOr<std::vector<std::pair<std::size_t, double>>> LibraryCurve(
    double shift_in_sd, std::size_t max_size, std::uint64_t seed) {
  // Arbitrary location and scale; only the standardized shift matters.
  const double mu = -3.2;
  const double sigma = 0.7;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> members(5000), nonmembers(5000);
  for (double& v : members) v = mu + sigma * (shift_in_sd + normal(rng));
  for (double& v : nonmembers) v = mu + sigma * normal(rng);
  SweepConfig config;
  for (std::size_t n = 2; n <= max_size; ++n) config.group_sizes.push_back(n);
  config.repetitions = 1000;
  config.seed = seed;
  auto sweep = DatasetInferenceSweep(members, nonmembers, config);
  if (!sweep.ok()) return sweep.status();
  std::vector<std::pair<std::size_t, double>> curve;
  for (const SweepResult& r : *sweep) curve.emplace_back(r.group_size, r.mean_p);
  return curve;
}

Outcome DatasetInference() {
  auto curve = LibraryCurve(1.0, 100, 11);
  if (!curve.ok()) return Fail(Describe(curve.status()));
  std::vector<double> sizes, ps;
  for (const auto& [size, p] : *curve) {
    sizes.push_back(static_cast<double>(size));
    ps.push_back(p);
  }
  const double rho = oracle::Spearman(sizes, ps);
  const std::size_t threshold = Threshold(*curve);
  const std::size_t oracle_threshold = Threshold(OracleCurve(1.0, 100));

  // Strong separation: members 1.5 standard deviations above.
  auto strong = LibraryCurve(1.5, 20, 12);
  if (!strong.ok()) return Fail(Describe(strong.status()));
  const std::size_t strong_threshold = Threshold(*strong);
  const std::size_t strong_oracle = Threshold(OracleCurve(1.5, 20));
  const double p6 = (*strong)[4].second;

  auto near = [](std::size_t a, std::size_t b) {
    return a != 0 && b != 0 && (a > b ? a - b : b - a) <= 2;
  };
  const std::string detail = absl::StrFormat(
      "1sd: rho %.4f, p<0.05 from size %d (oracle %d); 1.5sd: p(6) %.4f, "
      "p<0.05 from size %d (oracle %d)",
      rho, threshold, oracle_threshold, p6, strong_threshold, strong_oracle);
  return {rho < -0.9 && threshold != 0 && threshold <= 40 &&
              near(threshold, oracle_threshold) && p6 < 0.05 &&
              near(strong_threshold, 6) && near(strong_threshold, strong_oracle),
          detail};
}

// ---------------------------------------------------------------------------
// Baseline round trips
// ---------------------------------------------------------------------------

void AppendUtf8(std::string* out, char32_t cp) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string RandomUtf8(std::mt19937_64& rng) {
  auto uniform = [&](std::uint32_t lo, std::uint32_t hi) {
    return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
  };
  std::string text;
  const std::uint32_t length = uniform(0, 300);
  for (std::uint32_t i = 0; i < length; ++i) {
    char32_t cp;
    switch (uniform(0, 9)) {
      case 0:
        cp = uniform(0x80, 0x2FF);  // Latin supplements
        break;
      case 1:
        cp = uniform(0x400, 0x4FF);  // Cyrillic, including the look-alikes
        break;
      case 2:
        cp = uniform(0x4E00, 0x9FFF);
        break;
      case 3:
        cp = uniform(0x1F300, 0x1FAFF);
        break;
      case 4:
        cp = uniform(0, 3) == 0 ? 0xFDD0 : U' ';
        break;
      default:
        cp = uniform(0x20, 0x7E);
    }
    AppendUtf8(&text, cp);
  }
  return text;
}

Outcome BaselineRoundTrips() {
  auto fixture_map = HomoglyphMap::Load(TestDataPath("homoglyphs.tsv"));
  if (!fixture_map.ok()) return Fail(Describe(fixture_map.status()));
  const HomoglyphMap maps[] = {*fixture_map, HomoglyphMap::Default()};

  std::mt19937_64 rng(777);
  std::vector<Document> docs;
  for (int i = 0; i < 10000; ++i) {
    docs.push_back({absl::StrFormat("u%05d", i), RandomUtf8(rng), {}, {}});
  }

  std::size_t unicode_bad = 0, unicode_unchanged = 0;
  for (const Document& doc : docs) {
    const HomoglyphMap& map = maps[doc.id.back() % 2];
    const std::string marked = WatermarkUnicode(doc.text, map);
    if (marked == doc.text && doc.text.find_first_of("aeo") != std::string::npos) {
      ++unicode_unchanged;
    }
    if (cli::Sha256Hex(RemoveUnicode(marked, map)) != cli::Sha256Hex(doc.text)) {
      ++unicode_bad;
    }
  }

  std::vector<SequenceInsertion> log;
  std::vector<Document> marked_docs;
  for (const Document& doc : docs) {
    RandomSequenceResult r =
        WatermarkRandomSequence(doc, 5, 10, 1 + doc.text.size() % 3);
    log.insert(log.end(), r.insertions.begin(), r.insertions.end());
    marked_docs.push_back(std::move(r.document));
  }
  // Removal works from the serialized log, as the command line does.
  auto parsed = ParseInsertions(SerializeInsertions(log));
  if (!parsed.ok()) return Fail(Describe(parsed.status()));
  std::map<std::string, std::vector<SequenceInsertion>> by_doc;
  for (SequenceInsertion& ins : *parsed) by_doc[ins.doc_id].push_back(ins);
  std::size_t seq_bad = 0, seq_unchanged = 0;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (marked_docs[i].text == docs[i].text) ++seq_unchanged;
    auto restored = RemoveRandomSequences(marked_docs[i], by_doc[docs[i].id]);
    if (!restored.ok() ||
        cli::Sha256Hex(restored->text) != cli::Sha256Hex(docs[i].text)) {
      ++seq_bad;
    }
  }
  const std::string detail = absl::StrFormat(
      "10000 docs: unicode %d digest mismatches (%d unmarked), randomseq %d "
      "digest mismatches (%d unmarked)",
      unicode_bad, unicode_unchanged, seq_bad, seq_unchanged);
  return {unicode_bad == 0 && unicode_unchanged == 0 && seq_bad == 0 &&
              seq_unchanged == 0,
          detail};
}

// ---------------------------------------------------------------------------
// Targeted attack
// ---------------------------------------------------------------------------

Outcome TargetedAttack() {
  const std::string original = "The quick brown fox jumps over the lazy dog";
  auto setup = LoadStub("figure1_freq.tsv", "figure1_lexicon.tsv");
  if (!setup.ok()) return Fail(Describe(setup.status()));
  auto inverse = LoadTsvLexicon(TestDataPath("figure1_inverse_lexicon.tsv"));
  if (!inverse.ok()) return Fail(Describe(inverse.status()));
  LexiconSynonymProvider inverse_provider(std::move(inverse->lexicon));
  EmbedConfig config;
  config.k = 3;
  SubstitutionCache cache;
  auto marked = EmbedDocument({"fig", original, {}, {}}, setup->table,
                              ExclusionPolicy::Default(),
                              {setup->synonyms.get(), nullptr}, config, cache);
  if (!marked.ok()) return Fail(Describe(marked.status()));
  auto attacked =
      AttackTargeted(marked->document, setup->table, inverse_provider, 3);
  if (!attacked.ok()) return Fail(Describe(attacked.status()));
  const std::string& got = attacked->document.text;
  if (got != original) return Fail("got \"" + got + "\"");
  return {true, absl::StrFormat("\"%s\" -> \"%s\", %d words restored",
                                marked->document.text, got, attacked->replaced)};
}

// ---------------------------------------------------------------------------
// Determinism through the command line
// ---------------------------------------------------------------------------

Outcome Determinism() {
  TempDir dir;
  const Synthetic s = MakeSynthetic(1500, 99);
  auto saved = SaveCorpus(s.docs, dir.File("corpus.jsonl"));
  if (!saved.ok()) return Fail(Describe(saved));
  WriteFile(dir.File("freq.tsv"), s.FrequencyTsv());
  WriteFile(dir.File("lexicon.tsv"), s.LexiconTsv());

  auto embed = [&](const std::string& name, const std::string& threads)
      -> absl::StatusOr<std::string> {
    const std::string out = dir.File(name + ".jsonl");
    std::ostringstream sink_out, sink_err;
    const int code = cli::RunCli(
        {"embed", "--corpus", dir.File("corpus.jsonl"), "--out", out,
         "--freq-table", dir.File("freq.tsv"), "--lexicon",
         dir.File("lexicon.tsv"), "--k", "4", "--seed", "17", "--fraction",
         "0.6", "--sim-threshold", "0.25", "--embedder", "hashing",
         "--threads", threads},
        sink_out, sink_err);
    if (code != 0) {
      return absl::InternalError("embed exited " + std::to_string(code) +
                                 ": " + sink_err.str());
    }
    return cli::Sha256Hex(Slurp(out)) + cli::Sha256Hex(Slurp(out + ".log.jsonl"));
  };
  auto first = embed("run1", "1");
  if (!first.ok()) return Fail(Describe(first.status()));
  auto second = embed("run2", "1");
  if (!second.ok()) return Fail(Describe(second.status()));
  auto threaded = embed("run8", "8");
  if (!threaded.ok()) return Fail(Describe(threaded.status()));
  const std::string detail = absl::StrFormat(
      "corpus+log digest %s..., repeat %s, --threads 8 %s",
      first->substr(0, 12), *first == *second ? "same" : "DIFFERENT",
      *first == *threaded ? "same" : "DIFFERENT");
  return {*first == *second && *first == *threaded, detail};
}

// ---------------------------------------------------------------------------
// Semantic trend across K
// ---------------------------------------------------------------------------

Outcome SemanticTrend() {
  TempDir dir;
  const std::string out = dir.File("sweep.csv");
  std::ostringstream sink_out, sink_err;
  const int code = cli::RunCli(
      {"sweep-k", "--corpus", TestDataPath("trend_corpus.jsonl"), "--out", out,
       "--freq-table", TestDataPath("trend_freq.tsv"), "--lexicon",
       TestDataPath("trend_lexicon.tsv"), "--k-list", "3,4,5,6,7",
       "--embedder", "hashing"},
      sink_out, sink_err);
  if (code != 0) return Fail("sweep-k exited " + std::to_string(code) + ": " +
                             sink_err.str());
  auto rows = ParseCsv(Slurp(out));
  if (!rows.ok()) return Fail(Describe(rows.status()));
  if (rows->size() != 6) return Fail("expected 5 rows of results");
  const CsvRow& header = rows->front();
  std::vector<std::size_t> columns;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "mean_bleu" || header[c].rfind("cos_", 0) == 0) {
      columns.push_back(c);
    }
  }
  bool monotone = columns.size() >= 2;
  std::string bleu_values;
  for (std::size_t r = 1; r < rows->size(); ++r) {
    for (std::size_t c : columns) {
      double now = 0, before = 0;
      if (!ParseDouble((*rows)[r][c], &now)) return Fail("bad value");
      if (r > 1) {
        ParseDouble((*rows)[r - 1][c], &before);
        if (now > before) monotone = false;
      }
      if (header[c] == "mean_bleu") {
        bleu_values += (r > 1 ? " " : "") + (*rows)[r][c].substr(0, 6);
      }
    }
  }
  return {monotone, "BLEU by K=3..7: " + bleu_values +
                        (monotone ? "; all columns non-increasing"
                                  : "; a column increases")};
}

struct Criterion {
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

int Main() {
  const std::vector<Criterion> criteria = {
      {"figure1_reproduction", 1.0, FigureOne},
      {"figure2_reproduction", 1.0, FigureTwo},
      {"entropy_monotonicity", 30.0, EntropyMonotonicity},
      {"kernel_oracles", 60.0, KernelOracles},
      {"dataset_inference_shape", 120.0, DatasetInference},
      {"baseline_round_trips", 30.0, BaselineRoundTrips},
      {"targeted_attack_inversion", 1.0, TargetedAttack},
      {"determinism", 60.0, Determinism},
      {"k_sweep_semantic_trend", 60.0, SemanticTrend},
  };
  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome = criterion.run();
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    bool pass = outcome.pass;
    if (seconds >= criterion.limit_seconds) {
      pass = false;
      outcome.detail += absl::StrFormat(" [over the %.0f s limit]",
                                        criterion.limit_seconds);
    }
    if (!pass) ++failures;
    std::cout << absl::StrFormat("%s %-26s %8.3fs  %s\n",
                                 pass ? "PASS" : "FAIL", criterion.name,
                                 seconds, outcome.detail)
              << std::flush;
  }
  std::cout << absl::StrFormat("%d of %d criteria passed\n",
                               criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace leximark::acceptance

int main() { return leximark::acceptance::Main(); }
