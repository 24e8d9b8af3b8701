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

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gmock/gmock.h>
#include <gtest/gtest.h>
#include "leximark/corpus.h"
#include "leximark/embedder.h"
#include "leximark/status_macros.h"
#include "test_util.h"

namespace leximark::cli {
namespace {

using ::leximark::testing::ScopedTempDir;
using ::leximark::testing::TestDataPath;
using ::testing::HasSubstr;
using ::testing::Not;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void Write(const std::string& path, const std::string& contents) {
  std::ofstream(path, std::ios::binary) << contents;
}

constexpr char kFigureOneInput[] =
    "The quick brown fox jumps over the lazy dog.";
constexpr char kFigureOneOutput[] =
    "The speedy brown fox leaps over the sluggish dog.";

TEST(ExitCodeTest, Classes) {
  EXPECT_EQ(ExitCodeFor(absl::OkStatus()), 0);
  EXPECT_EQ(ExitCodeFor(absl::InvalidArgumentError("x")), 2);
  EXPECT_EQ(ExitCodeFor(absl::NotFoundError("x")), 2);
  EXPECT_EQ(ExitCodeFor(absl::UnavailableError("x")), 3);
  EXPECT_EQ(ExitCodeFor(absl::DeadlineExceededError("x")), 3);
  EXPECT_EQ(ExitCodeFor(absl::UnknownError("x")), 1);
}

TEST(CliTest, HelpVersionAndUsageErrors) {
  CliRun help = Cli({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_THAT(help.out, HasSubstr("embed"));
  CliRun version = Cli({"--version"});
  EXPECT_EQ(version.code, 0);
  EXPECT_THAT(version.out, HasSubstr("0."));
  EXPECT_EQ(Cli({}).code, 2);
  EXPECT_EQ(Cli({"frobnicate"}).code, 2);
  EXPECT_EQ(Cli({"embed", "--corpus", "x.jsonl"}).code, 2);
}

class CliEmbedTest : public ::testing::Test {
 protected:
  void SetUp() override {
    corpus_ = dir_.File("in.jsonl");
    Write(corpus_, std::string(R"({"id":"d1","text":")") + kFigureOneInput +
                       "\"}\n");
  }

  std::vector<std::string> EmbedArgs(const std::string& out) const {
    return {"embed",
            "--corpus", corpus_,
            "--out", out,
            "--freq-table", TestDataPath("figure1_freq.tsv"),
            "--lexicon", TestDataPath("figure1_lexicon.tsv"),
            "--k", "3"};
  }

  ScopedTempDir dir_;
  std::string corpus_;
};

TEST_F(CliEmbedTest, EmbedWritesCorpusLogAndManifest) {
  const std::string out = dir_.File("out.jsonl");
  std::vector<std::string> args = EmbedArgs(out);
  args.insert(args.end(), {"--bridge-token", "s3cret"});
  CliRun run = Cli(args);
  ASSERT_EQ(run.code, 0) << run.err;
  EXPECT_THAT(run.out, HasSubstr("watermarked 1 of 1 documents, 3 substitutions"));
  ASSERT_OK_AND_ASSIGN(std::vector<Document> docs, LoadCorpus(out));
  ASSERT_EQ(docs.size(), 1u);
  EXPECT_EQ(docs[0].text, kFigureOneOutput);
  EXPECT_EQ(docs[0].meta.at("leximark"), "1");
  ASSERT_OK_AND_ASSIGN(std::vector<SubstitutionRecord> log,
                       ParseWatermarkLog(Slurp(out + ".log.jsonl")));
  EXPECT_EQ(log.size(), 3u);
  const std::string manifest = Slurp(out + ".manifest.json");
  EXPECT_THAT(manifest, HasSubstr("\"embed\""));
  EXPECT_THAT(manifest, Not(HasSubstr("s3cret")));
  EXPECT_THAT(manifest, HasSubstr("<redacted>"));
}

TEST_F(CliEmbedTest, InvalidKIsAConfigurationError) {
  std::vector<std::string> args = EmbedArgs(dir_.File("bad.jsonl"));
  args.back() = "0";
  CliRun run = Cli(args);
  EXPECT_EQ(run.code, 2);
  EXPECT_THAT(run.err, HasSubstr("error:"));
}

TEST_F(CliEmbedTest, MissingFrequencyTableIsNotFound) {
  std::vector<std::string> args = EmbedArgs(dir_.File("o.jsonl"));
  args[6] = dir_.File("absent.tsv");
  EXPECT_EQ(Cli(args).code, 2);
}

TEST_F(CliEmbedTest, UnreachableBridgeIsAProviderError) {
  const std::vector<std::string> args = {
      "embed", "--corpus", corpus_, "--out", dir_.File("r.jsonl"),
      "--freq-table", TestDataPath("figure1_freq.tsv"),
      "--synonyms", "concat",
      "--bridge-url", "http://127.0.0.1:9", "--max-retries", "0"};
  CliRun run = Cli(args);
  EXPECT_EQ(run.code, 3) << run.err;
}

TEST_F(CliEmbedTest, TargetedAttackRestoresOriginal) {
  const std::string marked = dir_.File("marked.jsonl");
  ASSERT_EQ(Cli(EmbedArgs(marked)).code, 0);
  const std::string restored = dir_.File("restored.jsonl");
  CliRun run = Cli({"attack", "--mode", "targeted", "--corpus", marked, "--out",
                 restored, "--lexicon",
                 TestDataPath("figure1_inverse_lexicon.tsv"), "--freq-table",
                 TestDataPath("figure1_freq.tsv"), "--k", "3"});
  ASSERT_EQ(run.code, 0) << run.err;
  ASSERT_OK_AND_ASSIGN(std::vector<Document> docs, LoadCorpus(restored));
  EXPECT_EQ(docs[0].text, kFigureOneInput);
}

TEST_F(CliEmbedTest, UnicodeBaselineRoundTrip) {
  const std::string marked = dir_.File("u.jsonl");
  ASSERT_EQ(Cli({"baseline", "--mode", "unicode", "--corpus", corpus_,
                 "--out", marked, "--homoglyphs",
                 TestDataPath("homoglyphs.tsv")})
                .code,
            0);
  ASSERT_OK_AND_ASSIGN(std::vector<Document> docs, LoadCorpus(marked));
  EXPECT_NE(docs[0].text, kFigureOneInput);
  const std::string back = dir_.File("back.jsonl");
  CliRun run = Cli({"attack", "--mode", "unicode", "--remove", "--corpus", marked,
                 "--out", back, "--homoglyphs", TestDataPath("homoglyphs.tsv")});
  ASSERT_EQ(run.code, 0) << run.err;
  ASSERT_OK_AND_ASSIGN(docs, LoadCorpus(back));
  EXPECT_EQ(docs[0].text, kFigureOneInput);
}

TEST(CliPipelineTest, ScoreReportAndDatasetTest) {
  ScopedTempDir dir;
  std::string corpus;
  for (int i = 0; i < 12; ++i) {
    const bool member = i % 2 == 0;
    std::string padding;
    for (int r = 0; r < i; ++r) padding += " fox";
    corpus += "{\"id\":\"d" + std::to_string(i) + "\",\"text\":\"" +
              (member ? "the quick brown fox jumps over the lazy dog"
                      : "speedy sluggish leaps speedy sluggish leaps") +
              padding + " " + std::to_string(i) +
              "\",\"label\":\"" +
              (member ? "member" : "nonmember") + "\"}\n";
  }
  Write(dir.File("c.jsonl"), corpus);
  const std::string scores = dir.File("s.csv");
  CliRun run = Cli({"score", "--corpus", dir.File("c.jsonl"), "--out", scores,
                 "--provider", "unigram", "--freq-table",
                 TestDataPath("figure1_freq.tsv"), "--methods",
                 "ppl,zlib,min_k_20,min_kpp_20"});
  ASSERT_EQ(run.code, 0) << run.err;
  EXPECT_THAT(run.out, HasSubstr("scored 12 documents"));
  EXPECT_THAT(Slurp(scores),
              HasSubstr("doc_id,label,token_count,ppl,zlib,min_k_20.0,"
                        "min_kpp_20.0\n"));

  run = Cli({"report", "--scores", scores, "--methods", "ppl"});
  ASSERT_EQ(run.code, 0) << run.err;
  EXPECT_THAT(run.out, HasSubstr("100.0%"));

  run = Cli({"dataset-test", "--scores", scores, "--method", "ppl",
             "--group-sizes", "2:4", "--reps", "20"});
  ASSERT_EQ(run.code, 0) << run.err;
  EXPECT_THAT(run.out, HasSubstr("group_size,mean_p,repetitions,seed\n2,"));
  run = Cli({"dataset-test", "--scores", scores, "--group-sizes", "2:40"});
  EXPECT_EQ(run.code, 2);
}

TEST(CliPipelineTest, PerplexityRatio) {
  ScopedTempDir dir;
  Write(dir.File("a.jsonl"),
        R"({"id":"x","tokens":[{"t":"a","lp":0,"mu":-1,"sigma":1},{"t":"b","lp":-2,"mu":-1,"sigma":1}]})"
        "\n");
  Write(dir.File("b.jsonl"),
        R"({"id":"x","tokens":[{"t":"a","lp":0,"mu":-1,"sigma":1},{"t":"b","lp":-1,"mu":-1,"sigma":1}]})"
        "\n");
  CliRun run = Cli({"perplexity-ratio", "--original-dump", dir.File("a.jsonl"),
                 "--finetuned-dump", dir.File("b.jsonl")});
  ASSERT_EQ(run.code, 0) << run.err;
  EXPECT_THAT(run.out, HasSubstr("ppl_original,ppl_finetuned,perplexity_ratio\n"));
  EXPECT_THAT(run.out, HasSubstr(",271.828"));
}

}  // namespace
}  // namespace leximark::cli
