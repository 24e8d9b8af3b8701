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

#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>
#include "leximark/corpus.h"
#include "leximark/detect.h"
#include "leximark/embedder.h"
#include "leximark/entropy.h"
#include "leximark/mia.h"
#include "leximark/providers.h"
#include "leximark/wordnet.h"

namespace leximark {
namespace {

std::vector<TokenLogProb> RandomTokens(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lp(-15.0, 0.0);
  std::vector<TokenLogProb> tokens(n);
  for (std::size_t i = 0; i < n; ++i) {
    tokens[i] = {"w", lp(rng), -5.0, 2.0, i, i > 0};
  }
  return tokens;
}

void BM_MinK(benchmark::State& state) {
  const auto tokens = RandomTokens(state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(ScoreMinK(tokens, 20));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MinK)->Arg(128)->Arg(2048);

void BM_MinKPlusPlus(benchmark::State& state) {
  const auto tokens = RandomTokens(state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(ScoreMinKPlusPlus(tokens, 20));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MinKPlusPlus)->Arg(128)->Arg(2048);

std::vector<double> Normal(std::size_t n, double mean, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(mean, 1.0);
  std::vector<double> out(n);
  for (double& v : out) v = dist(rng);
  return out;
}

void BM_Auroc(benchmark::State& state) {
  const auto m = Normal(state.range(0), 0.5, 3);
  const auto n = Normal(state.range(0), 0.0, 4);
  for (auto _ : state) benchmark::DoNotOptimize(Auroc(m, n));
}
BENCHMARK(BM_Auroc)->Arg(1000)->Arg(100000);

void BM_WelchTTest(benchmark::State& state) {
  const auto m = Normal(state.range(0), 0.2, 5);
  const auto n = Normal(state.range(0), 0.0, 6);
  for (auto _ : state) benchmark::DoNotOptimize(WelchTTest(m, n));
}
BENCHMARK(BM_WelchTTest)->Arg(10)->Arg(1000);

void BM_DatasetInferenceSweep(benchmark::State& state) {
  const auto m = Normal(1000, 0.3, 7);
  const auto n = Normal(1000, 0.0, 8);
  SweepConfig config;
  config.group_sizes = {10, 50, 100};
  config.repetitions = 100;
  for (auto _ : state) {
    benchmark::DoNotOptimize(DatasetInferenceSweep(m, n, config));
  }
}
BENCHMARK(BM_DatasetInferenceSweep)->Unit(benchmark::kMillisecond);

// Synthetic vocabulary where every word has one rarer synonym.
struct Fixture {
  FrequencyTable table;
  Lexicon lexicon;
  std::vector<Document> corpus;
};

Fixture MakeFixture(std::size_t docs) {
  Fixture f;
  std::mt19937_64 rng(9);
  constexpr int kVocab = 2000;
  for (int i = 0; i < kVocab; ++i) {
    const std::string word = "w" + std::string(1, 'a' + i % 26) +
                             std::to_string(i);
    const std::string syn = "s" + std::string(1, 'a' + i % 26) +
                            std::to_string(i);
    (void)f.table.Add(word, 1e-3 / (1 + i % 97));
    (void)f.table.Add(syn, 1e-6 / (1 + i % 13));
    const std::vector<std::string> candidates = {syn};
    f.lexicon.Add(word, candidates);
  }
  std::uniform_int_distribution<int> pick(0, kVocab - 1);
  for (std::size_t d = 0; d < docs; ++d) {
    std::string text;
    for (int s = 0; s < 5; ++s) {
      for (int w = 0; w < 15; ++w) {
        const int i = pick(rng);
        text += (w ? " w" : "W") + std::string(1, 'a' + i % 26) +
                std::to_string(i);
      }
      text += ". ";
    }
    f.corpus.push_back({"doc-" + std::to_string(d), text, {}, {}});
  }
  return f;
}

void BM_EmbedCorpus(benchmark::State& state) {
  Fixture f = MakeFixture(200);
  LexiconSynonymProvider synonyms(f.lexicon);
  const ExclusionPolicy policy = ExclusionPolicy::Default();
  EmbedConfig config;
  config.threads = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        EmbedCorpus(f.corpus, f.table, policy, {&synonyms, nullptr}, config));
  }
  state.SetItemsProcessed(state.iterations() * f.corpus.size());
}
BENCHMARK(BM_EmbedCorpus)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace leximark

BENCHMARK_MAIN();
