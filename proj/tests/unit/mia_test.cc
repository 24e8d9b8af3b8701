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

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <gmock/gmock.h>
#include <gtest/gtest.h>
#include "leximark/corpus.h"
#include "leximark/providers.h"
#include "oracles.h"
#include "test_util.h"

namespace leximark {
namespace {

using ::leximark::testing::StatusIs;
using ::testing::ElementsAre;
using ::testing::HasSubstr;

// Leading token is unscored, so callers list only the scored values.
std::vector<TokenLogProb> Tokens(const std::vector<double>& logprobs,
                                 double mu = -2.0, double sigma = 1.0) {
  std::vector<TokenLogProb> tokens;
  tokens.push_back({"<s>", 0.0, mu, sigma, 0, false});
  for (double lp : logprobs) {
    tokens.push_back({"w", lp, mu, sigma, tokens.size(), true});
  }
  return tokens;
}

TEST(PerplexityTest, MatchesDefinition) {
  EXPECT_DOUBLE_EQ(*Perplexity(Tokens({std::log(0.5), std::log(0.5)})), 2.0);
  EXPECT_DOUBLE_EQ(*Perplexity(Tokens({0.0, 0.0})), 1.0);
  EXPECT_NEAR(*Perplexity(Tokens({std::log(0.5), std::log(0.25)})),
              2.82842712474619009760, 1e-12);
  EXPECT_THAT(Perplexity(Tokens({})),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(ScorePplTest, IsMeanLogProb) {
  EXPECT_EQ(*ScorePpl(Tokens({-1, -1, -1})), -1.0);
  EXPECT_EQ(*ScorePpl(Tokens({-0.5, -1.5})), -1.0);
  EXPECT_GT(*ScorePpl(Tokens({-0.1})), *ScorePpl(Tokens({-3.0})));
}

TEST(ScoreZlibTest, DividesLogPerplexityByCompressedLength) {
  // zlib level 6 length of this text, measured with Python's zlib module.
  const std::string text = "Hello world. How are you, buddy?";
  ASSERT_OK_AND_ASSIGN(std::size_t length, ZlibCompressedLength(text));
  EXPECT_EQ(length, 40u);
  EXPECT_DOUBLE_EQ(*ScoreZlib(Tokens({-2.0, -2.0}), text), -0.05);
  EXPECT_EQ(*ScoreZlib(Tokens({0.0}), text), 0.0);
  EXPECT_THAT(ScoreZlib(Tokens({-1.0}), ""),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_EQ(*ZlibCompressedLength("The quick brown fox jumps over the lazy dog"),
            50u);
}

TEST(ScoreMinKTest, AveragesSmallestLogProbs) {
  EXPECT_EQ(*ScoreMinK(Tokens({-1, -2, -3, -4, -5}), 40), -4.5);
  EXPECT_EQ(*ScoreMinK(Tokens({-2, -2, -2}), 37), -2.0);
  EXPECT_EQ(*ScoreMinK(Tokens({-1, -2, -3}), 10), -3.0);
  EXPECT_THAT(ScoreMinK(Tokens({-1}), 0),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(ScoreMinK(Tokens({-1}), 100.5),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(ScoreMinK(Tokens({}), 20),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(ScoreMinKTest, CountUsesExactPercentages) {
  EXPECT_EQ(MinKCount(100, 29), 29u);
  EXPECT_EQ(MinKCount(10, 70), 7u);
  EXPECT_EQ(MinKCount(3, 10), 1u);
  EXPECT_EQ(MinKCount(5, 100), 5u);
}

TEST(ScoreMinKTest, FullPercentEqualsPpl) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> lp(-12.0, 0.0);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> values(1 + i % 40);
    for (double& v : values) v = lp(rng);
    EXPECT_EQ(*ScoreMinK(Tokens(values), 100), *ScorePpl(Tokens(values)));
  }
}

TEST(ScoreMinKTest, MatchesFullSortOracle) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> lp(-15.0, 0.0);
  std::uniform_int_distribution<int> len(1, 32);
  std::uniform_int_distribution<int> pct(1, 100);
  for (int i = 0; i < 300; ++i) {
    std::vector<double> values(len(rng));
    for (double& v : values) v = lp(rng);
    const double k = pct(rng);
    EXPECT_EQ(*ScoreMinK(Tokens(values), k), oracle::MinKMean(values, k));
  }
}

TEST(ScoreMinKTest, ShiftAndMonotonicity) {
  const std::vector<double> base = {-1.5, -0.25, -3.0, -2.0, -0.5};
  std::vector<double> shifted = base;
  for (double& v : shifted) v -= 0.5;
  EXPECT_EQ(*ScoreMinK(Tokens(shifted), 40), *ScoreMinK(Tokens(base), 40) - 0.5);
  EXPECT_DOUBLE_EQ(*ScorePpl(Tokens(shifted)), *ScorePpl(Tokens(base)) - 0.5);
  std::vector<double> raised = base;
  raised[2] = -0.125;
  EXPECT_GE(*ScoreMinK(Tokens(raised), 40), *ScoreMinK(Tokens(base), 40));
}

TEST(ScoreMinKPlusPlusTest, NormalizesByDistributionMoments) {
  std::vector<TokenLogProb> tokens = Tokens({-1, -3}, -2.0, 1.0);
  EXPECT_EQ(*ScoreMinKPlusPlus(tokens, 50), -1.0);
  EXPECT_EQ(*ScoreMinKPlusPlus(Tokens({-2, -2}, -2.0, 1.0), 50), 0.0);
  // Doubling sigma and the offset from mu leaves z unchanged.
  EXPECT_EQ(*ScoreMinKPlusPlus(Tokens({0, -4}, -2.0, 2.0), 50), -1.0);
  // A shift of c moves every z by c / sigma.
  EXPECT_EQ(*ScoreMinKPlusPlus(Tokens({-0.5, -2.5}, -2.0, 2.0), 100),
            *ScoreMinKPlusPlus(Tokens({-1.5, -3.5}, -2.0, 2.0), 100) + 0.5);
}

TEST(ScoreMinKPlusPlusTest, SkipsTokensWithoutSpread) {
  std::vector<TokenLogProb> tokens = Tokens({-1, -3, -5});
  tokens[3].dist_std = 0.0;
  std::size_t skipped = 0;
  EXPECT_EQ(*ScoreMinKPlusPlus(tokens, 50, &skipped), -1.0);
  EXPECT_EQ(skipped, 1u);
  for (TokenLogProb& t : tokens) t.dist_std = 0.0;
  EXPECT_THAT(ScoreMinKPlusPlus(tokens, 50),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(MethodSpecTest, NamesAndParsing) {
  ASSERT_OK_AND_ASSIGN(MethodSpec spec, ParseMethodSpec("min_k", 20));
  EXPECT_EQ(spec.Name(), "min_k_20.0");
  ASSERT_OK_AND_ASSIGN(spec, ParseMethodSpec("min_kpp_12.5"));
  EXPECT_EQ(spec.method, MiaMethod::kMinKPlusPlus);
  EXPECT_EQ(spec.Name(), "min_kpp_12.5");
  ASSERT_OK_AND_ASSIGN(spec, ParseMethodSpec("loss"));
  EXPECT_EQ(spec.Name(), "ppl");
  EXPECT_THAT(ParseMethodSpec("recall"),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(ParseMethodSpec("min_k_0"),
              StatusIs(absl::StatusCode::kInvalidArgument));
  ASSERT_OK_AND_ASSIGN(std::vector<MethodSpec> list,
                       ParseMethodList("ppl, zlib,ppl,min_k_20"));
  std::vector<std::string> names;
  for (const MethodSpec& s : list) names.push_back(s.Name());
  EXPECT_THAT(names, ElementsAre("ppl", "zlib", "min_k_20.0"));
  EXPECT_THAT(ParseMethodList(" , "),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(ScoreCorpusTest, ReplaysDumpAndCarriesLabels) {
  const std::string dump =
      R"({"id":"m","tokens":[{"t":"A","lp":0,"mu":-2,"sigma":1},)"
      R"({"t":"b","lp":-0.5,"mu":-2,"sigma":1},{"t":"c","lp":-1,"mu":-2,"sigma":1}]})"
      "\n"
      R"({"id":"n","tokens":[{"t":"A","lp":0,"mu":-2,"sigma":1},)"
      R"({"t":"b","lp":-3,"mu":-2,"sigma":1},{"t":"c","lp":-4,"mu":-2,"sigma":1}]})"
      "\n";
  ASSERT_OK_AND_ASSIGN(DumpLogProbProvider provider,
                       DumpLogProbProvider::Parse(dump));
  const std::vector<Document> corpus = {
      {"m", "A b c", Label::kMember, {}},
      {"n", "A b c", Label::kNonmember, {}},
  };
  ASSERT_OK_AND_ASSIGN(std::vector<MethodSpec> methods,
                       ParseMethodList("ppl,zlib,min_k_50,min_kpp_50"));
  std::vector<std::string> streamed;
  ASSERT_OK_AND_ASSIGN(
      std::vector<ScoredDocument> scored,
      ScoreCorpus(corpus, provider, methods, 1,
                  [&](const ScoredDocument& d) {
                    streamed.push_back(d.doc_id);
                    return absl::OkStatus();
                  }));
  EXPECT_THAT(streamed, ElementsAre("m", "n"));
  ASSERT_EQ(scored.size(), 2u);
  EXPECT_EQ(scored[0].label, Label::kMember);
  EXPECT_EQ(scored[0].token_count, 2u);
  EXPECT_EQ(scored[0].scores.at("ppl"), -0.75);
  EXPECT_EQ(scored[0].scores.at("min_k_50.0"), -1.0);
  EXPECT_EQ(scored[0].scores.at("min_kpp_50.0"), 1.0);
  EXPECT_GT(scored[0].scores.at("zlib"), scored[1].scores.at("zlib"));

  std::vector<std::string> names;
  for (const MethodSpec& m : methods) names.push_back(m.Name());
  const std::string csv = SerializeScores(scored, names);
  ASSERT_OK_AND_ASSIGN(
      std::vector<ScoredDocument> again,
      ScoreCorpus(corpus, provider, methods, 8));
  EXPECT_EQ(SerializeScores(again, names), csv);

  ASSERT_OK_AND_ASSIGN(ScoreTable table, ParseScores(csv));
  EXPECT_EQ(table.methods, names);
  ASSERT_EQ(table.documents.size(), 2u);
  EXPECT_EQ(table.documents[1].scores.at("ppl"), -3.5);
  EXPECT_EQ(table.documents[1].label, Label::kNonmember);
}

TEST(ScoreCorpusTest, SinkErrorStopsScoring) {
  ASSERT_OK_AND_ASSIGN(
      DumpLogProbProvider provider,
      DumpLogProbProvider::Parse(
          R"({"id":"a","tokens":[{"t":"x","lp":0,"mu":-1,"sigma":1},)"
          R"({"t":"y","lp":-1,"mu":-1,"sigma":1}]})"));
  const std::vector<Document> corpus = {{"a", "x y", {}, {}},
                                        {"b", "x y", {}, {}}};
  ASSERT_OK_AND_ASSIGN(std::vector<MethodSpec> methods, ParseMethodList("ppl"));
  int calls = 0;
  EXPECT_THAT(ScoreCorpus(corpus, provider, methods, 1,
                          [&](const ScoredDocument&) {
                            ++calls;
                            return absl::OkStatus();
                          }),
              StatusIs(absl::StatusCode::kNotFound, HasSubstr("'b'")));
  EXPECT_EQ(calls, 1);
}

TEST(ScoreTableTest, SplitByLabel) {
  const std::string csv =
      "doc_id,label,token_count,ppl\n"
      "a,member,3,-1\n"
      "b,nonmember,3,-2\n"
      "c,unknown,3,-9\n"
      "d,member,3,-0.5\n";
  ASSERT_OK_AND_ASSIGN(ScoreTable table, ParseScores(csv));
  ASSERT_OK_AND_ASSIGN(LabeledScores split, SplitByLabel(table, "ppl"));
  EXPECT_THAT(split.members, ElementsAre(-1.0, -0.5));
  EXPECT_THAT(split.nonmembers, ElementsAre(-2.0));
  EXPECT_THAT(SplitByLabel(table, "zlib"),
              StatusIs(absl::StatusCode::kNotFound));
  ASSERT_OK_AND_ASSIGN(ScoreTable only_members,
                       ParseScores("doc_id,label,token_count,ppl\na,member,1,-1\n"));
  EXPECT_THAT(SplitByLabel(only_members, "ppl"),
              StatusIs(absl::StatusCode::kFailedPrecondition));
  EXPECT_THAT(ParseScores("doc_id,label,token_count,ppl\na,member,1,abc\n"),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

}  // namespace
}  // namespace leximark
