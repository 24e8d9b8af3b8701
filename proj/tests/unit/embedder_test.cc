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

#include <set>
#include <string>
#include <vector>

#include <gmock/gmock.h>
#include <gtest/gtest.h>
#include "leximark/corpus.h"
#include "leximark/entropy.h"
#include "leximark/providers.h"
#include "leximark/wordnet.h"
#include "test_util.h"

namespace leximark {
namespace {

using ::leximark::testing::StatusIs;
using ::leximark::testing::TestDataPath;
using ::testing::ElementsAre;
using ::testing::HasSubstr;

struct StubSetup {
  FrequencyTable table;
  std::unique_ptr<LexiconSynonymProvider> synonyms;
};

StubSetup LoadSetup(const std::string& freq, const std::string& lexicon) {
  StubSetup setup;
  auto table = LoadFrequencyTable(TestDataPath(freq));
  EXPECT_TRUE(table.ok()) << table.status();
  setup.table = std::move(table->table);
  auto lex = LoadTsvLexicon(TestDataPath(lexicon));
  EXPECT_TRUE(lex.ok()) << lex.status();
  setup.synonyms =
      std::make_unique<LexiconSynonymProvider>(std::move(lex->lexicon), "tsv");
  return setup;
}

StubSetup InlineSetup(std::string_view freq, std::string_view lexicon) {
  StubSetup setup;
  setup.table = ParseFrequencyTable(freq).value().table;
  setup.synonyms = std::make_unique<LexiconSynonymProvider>(
      ParseTsvLexicon(lexicon).value().lexicon, "tsv");
  return setup;
}

EmbedConfig ConfigWithK(std::size_t k) {
  EmbedConfig config;
  config.k = k;
  return config;
}

absl::StatusOr<DocumentEmbedResult> Embed(const StubSetup& setup,
                                          std::string_view text,
                                          const EmbedConfig& config,
                                          SubstitutionCache& cache) {
  return EmbedDocument({"d", std::string(text), {}, {}}, setup.table,
                       ExclusionPolicy::Default(), {setup.synonyms.get(), nullptr},
                       config, cache);
}

TEST(EmbedDocumentTest, QuickBrownFoxExample) {
  const StubSetup setup = LoadSetup("figure1_freq.tsv", "figure1_lexicon.tsv");
  SubstitutionCache cache;
  ASSERT_OK_AND_ASSIGN(
      DocumentEmbedResult result,
      Embed(setup, "The quick brown fox jumps over the lazy dog",
            ConfigWithK(3), cache));
  EXPECT_EQ(result.document.text,
            "The speedy brown fox leaps over the sluggish dog");
  ASSERT_EQ(result.records.size(), 3u);
  std::set<std::string> replaced;
  for (const SubstitutionRecord& r : result.records) {
    EXPECT_GT(r.replacement_entropy, r.original_entropy);
    EXPECT_EQ(r.source, DecisionSource::kFresh);
    replaced.insert(r.original);
  }
  EXPECT_THAT(replaced, ElementsAre("jumps", "lazy", "quick"));
}

TEST(EmbedDocumentTest, ECommerceExampleSkipsEntityAndHyphenParts) {
  const StubSetup setup = LoadSetup("figure2_freq.tsv", "figure2_lexicon.tsv");
  SubstitutionCache cache;
  ASSERT_OK_AND_ASSIGN(
      DocumentEmbedResult result,
      Embed(setup,
            "The e-commerce platform leverages AI to personalize product "
            "recommendations.",
            ConfigWithK(3), cache));
  EXPECT_EQ(result.document.text,
            "The e-commerce platform utilizes AI to customize item "
            "recommendations.");
}

TEST(ChooseReplacementTest, SkipsHigherRankedCandidateWithoutEntropyGain) {
  const StubSetup setup =
      InlineSetup("day\t1e-2\nlazy\t1e-4\nidle\t1e-3\nsluggish\t1e-5\n",
                  "lazy\tidle,sluggish\n");
  SubstitutionCache cache;
  ASSERT_OK_AND_ASSIGN(DocumentEmbedResult result,
                       Embed(setup, "a lazy day", ConfigWithK(1), cache));
  EXPECT_EQ(result.document.text, "a sluggish day");
}

TEST(ChooseReplacementTest, KeepsWordWhenNoCandidateQualifies) {
  const StubSetup setup = InlineSetup(
      "day\t1e-2\nlazy\t1e-4\nidle\t1e-3\n",
      "lazy\tidle,slow-moving,couch potato\n");
  SubstitutionCache cache;
  ASSERT_OK_AND_ASSIGN(DocumentEmbedResult result,
                       Embed(setup, "a lazy day", ConfigWithK(1), cache));
  EXPECT_EQ(result.document.text, "a lazy day");
  EXPECT_TRUE(result.records.empty());
  ASSERT_NE(cache.Find("lazy"), nullptr);
  EXPECT_FALSE(cache.Find("lazy")->replacement.has_value());
}

TEST(ChooseReplacementTest, OovWordIsNeverBeatenByOovSynonym) {
  const StubSetup setup = InlineSetup("common\t0.1\n", "zorp\tblarg\n");
  SubstitutionCache cache;
  ASSERT_OK_AND_ASSIGN(DocumentEmbedResult result,
                       Embed(setup, "zorp", ConfigWithK(1), cache));
  EXPECT_EQ(result.document.text, "zorp");
}

// Embeds every sentence as a one-hot of whether it contains "good".
class KeywordEmbedder final : public EmbeddingProvider {
 public:
  std::string_view name() const override { return "keyword"; }
  absl::StatusOr<std::vector<EmbeddingVector>> Embed(
      std::span<const std::string> texts) const override {
    std::vector<EmbeddingVector> out;
    for (const std::string& t : texts) {
      const bool good = t.find("good") != std::string::npos ||
                        t.find("fine") != std::string::npos;
      out.push_back({{good ? 1.0 : 0.0, 1.0}});
    }
    return out;
  }
};

TEST(ChooseReplacementTest, SimilarityThresholdFiltersCandidates) {
  const StubSetup setup =
      InlineSetup("day\t5e-2\ngood\t1e-2\nbad\t1e-4\nfine\t1e-3\n",
                  "good\tbad,fine\n");
  KeywordEmbedder embedder;
  EmbedConfig config = ConfigWithK(1);
  config.similarity_threshold = 0.99;
  SubstitutionCache cache;
  ASSERT_OK_AND_ASSIGN(
      DocumentEmbedResult result,
      EmbedDocument({"d", "a good day", {}, {}}, setup.table,
                    ExclusionPolicy::Default(),
                    {setup.synonyms.get(), &embedder}, config, cache));
  EXPECT_EQ(result.document.text, "a fine day");
  ASSERT_EQ(result.records.size(), 1u);
  ASSERT_TRUE(result.records[0].similarity.has_value());
  EXPECT_GE(*result.records[0].similarity, 0.99);

  SubstitutionCache fresh;
  EXPECT_THAT(EmbedDocument({"d", "a good day", {}, {}}, setup.table,
                            ExclusionPolicy::Default(),
                            {setup.synonyms.get(), nullptr}, config, fresh),
              StatusIs(absl::StatusCode::kFailedPrecondition));
}

TEST(EmbedDocumentTest, RewritesEveryOccurrenceAndPreservesCase) {
  const StubSetup setup = InlineSetup(
      "thinking\t1e-2\naction\t1e-2\nquick\t1e-3\nspeedy\t1e-5\n",
                                  "quick\tspeedy\n");
  SubstitutionCache cache;
  ASSERT_OK_AND_ASSIGN(
      DocumentEmbedResult result,
      Embed(setup, "Quick thinking, quick action!  QUICK.", ConfigWithK(1),
            cache));
  EXPECT_EQ(result.document.text, "Speedy thinking, speedy action!  Speedy.");
  EXPECT_EQ(result.records.size(), 3u);
  EXPECT_EQ(result.records[1].start, 16u);
}

TEST(EmbedDocumentTest, DocumentWithoutEligibleWordsIsUnchanged) {
  const StubSetup setup = LoadSetup("figure1_freq.tsv", "figure1_lexicon.tsv");
  SubstitutionCache cache;
  ASSERT_OK_AND_ASSIGN(DocumentEmbedResult result,
                       Embed(setup, "the of and, 1234 -- to", ConfigWithK(3),
                             cache));
  EXPECT_EQ(result.document.text, "the of and, 1234 -- to");
  EXPECT_TRUE(result.records.empty());
}

TEST(EmbedDocumentTest, KBoundsDistinctSubstitutionsPerSentence) {
  const StubSetup setup = InlineSetup(
      "alpha\t1e-2\nbeta\t2e-2\ngamma\t3e-2\ndelta\t4e-2\nomega\t5e-2\n"
      "a2\t1e-6\nb2\t1e-6\nc2\t1e-6\nd2\t1e-6\ne2\t1e-6\n",
      "alpha\taa\nbeta\tbb\ngamma\tcc\ndelta\tdd\nomega\tee\n");
  SubstitutionCache cache;
  ASSERT_OK_AND_ASSIGN(
      DocumentEmbedResult result,
      Embed(setup, "alpha beta gamma delta omega", ConfigWithK(2), cache));
  EXPECT_EQ(result.document.text, "aa bb gamma delta omega");
}

TEST(EmbedCorpusTest, CacheCarriesDecisionsAcrossDocuments) {
  const StubSetup setup = LoadSetup("figure1_freq.tsv", "figure1_lexicon.tsv");
  const std::vector<Document> corpus = {
      {"a", "The quick brown fox jumps over the lazy dog", {}, {}},
      {"b", "A quick reply.", {}, {}},
  };
  ASSERT_OK_AND_ASSIGN(
      CorpusEmbedResult result,
      EmbedCorpus(corpus, setup.table, ExclusionPolicy::Default(),
                  {setup.synonyms.get(), nullptr}, ConfigWithK(3)));
  EXPECT_EQ(result.documents[1].text, "A speedy reply.");
  ASSERT_EQ(result.log.records.size(), 4u);
  EXPECT_EQ(result.log.records.back().doc_id, "b");
  EXPECT_EQ(result.log.records.back().source, DecisionSource::kCache);
  EXPECT_EQ(result.documents[0].meta.at("leximark"), "1");
}

TEST(EmbedCorpusTest, FractionSelectsExactCountDeterministically) {
  const StubSetup setup = LoadSetup("figure1_freq.tsv", "figure1_lexicon.tsv");
  std::vector<Document> corpus;
  for (int i = 0; i < 100; ++i) {
    corpus.push_back({"d" + std::to_string(i), "a quick test", {}, {}});
  }
  EmbedConfig config = ConfigWithK(3);
  config.watermark_fraction = 0.05;
  config.seed = 42;
  ASSERT_OK_AND_ASSIGN(
      CorpusEmbedResult first,
      EmbedCorpus(corpus, setup.table, ExclusionPolicy::Default(),
                  {setup.synonyms.get(), nullptr}, config));
  ASSERT_OK_AND_ASSIGN(
      CorpusEmbedResult second,
      EmbedCorpus(corpus, setup.table, ExclusionPolicy::Default(),
                  {setup.synonyms.get(), nullptr}, config));
  EXPECT_EQ(first.log.watermarked_ids.size(), 5u);
  EXPECT_EQ(first.log.watermarked_ids, second.log.watermarked_ids);
  std::size_t flagged = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const bool marked = first.documents[i].meta.at("leximark") == "1";
    flagged += marked;
    EXPECT_EQ(first.documents[i].text,
              marked ? "a speedy test" : corpus[i].text);
  }
  EXPECT_EQ(flagged, 5u);

  config.seed = 43;
  ASSERT_OK_AND_ASSIGN(
      CorpusEmbedResult other,
      EmbedCorpus(corpus, setup.table, ExclusionPolicy::Default(),
                  {setup.synonyms.get(), nullptr}, config));
  EXPECT_NE(other.log.watermarked_ids, first.log.watermarked_ids);
}

TEST(EmbedCorpusTest, ThreadCountDoesNotChangeOutput) {
  const StubSetup setup = LoadSetup("trend_freq.tsv", "trend_lexicon.tsv");
  ASSERT_OK_AND_ASSIGN(std::vector<Document> corpus,
                       LoadCorpus(TestDataPath("trend_corpus.jsonl")));
  EmbedConfig config = ConfigWithK(4);
  ASSERT_OK_AND_ASSIGN(
      CorpusEmbedResult one,
      EmbedCorpus(corpus, setup.table, ExclusionPolicy::Default(),
                  {setup.synonyms.get(), nullptr}, config));
  config.threads = 8;
  ASSERT_OK_AND_ASSIGN(
      CorpusEmbedResult eight,
      EmbedCorpus(corpus, setup.table, ExclusionPolicy::Default(),
                  {setup.synonyms.get(), nullptr}, config));
  EXPECT_EQ(SerializeCorpus(one.documents), SerializeCorpus(eight.documents));
  EXPECT_EQ(SerializeWatermarkLog(one.log.records),
            SerializeWatermarkLog(eight.log.records));
  EXPECT_FALSE(one.log.records.empty());
}

TEST(EmbedConfigTest, ValidatesRanges) {
  EmbedConfig config;
  EXPECT_OK(config.Validate());
  config.k = 0;
  EXPECT_THAT(config.Validate(), StatusIs(absl::StatusCode::kInvalidArgument));
  config = EmbedConfig();
  config.similarity_threshold = 1.5;
  EXPECT_THAT(config.Validate(), StatusIs(absl::StatusCode::kInvalidArgument));
  config = EmbedConfig();
  config.watermark_fraction = 0.0;
  EXPECT_THAT(config.Validate(), StatusIs(absl::StatusCode::kInvalidArgument));
  config.watermark_fraction = 1.01;
  EXPECT_THAT(config.Validate(), StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(SynonymSourceTest, NamesRoundTrip) {
  for (SynonymSource s : {SynonymSource::kTsvStub, SynonymSource::kWndb,
                          SynonymSource::kRemoteConcat,
                          SynonymSource::kRemoteDropout}) {
    ASSERT_OK_AND_ASSIGN(SynonymSource parsed,
                         ParseSynonymSource(SynonymSourceName(s)));
    EXPECT_EQ(parsed, s);
  }
  EXPECT_THAT(ParseSynonymSource("thesaurus"),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(WatermarkLogTest, RoundTrips) {
  std::vector<SubstitutionRecord> records = {
      {"d1", 0, 4, "quick", "speedy", 13.2, 15.6, DecisionSource::kFresh,
       std::nullopt},
      {"d2", 3, 10, "Lazy", "Sluggish", 12.7, 16.6, DecisionSource::kCache,
       0.97},
  };
  ASSERT_OK_AND_ASSIGN(auto parsed,
                       ParseWatermarkLog(SerializeWatermarkLog(records)));
  EXPECT_EQ(parsed, records);
  EXPECT_THAT(ParseWatermarkLog("{\"doc_id\":1}\n"),
              StatusIs(absl::StatusCode::kInvalidArgument,
                       HasSubstr("line 1")));
}

}  // namespace
}  // namespace leximark
