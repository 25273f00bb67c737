// Copyright 2026 The EAP Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eap/pipeline.h"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "support/fixture.h"

namespace eap {
namespace {

namespace fs = std::filesystem;
using testing::MiniConfig;
using testing::ReadAll;
using testing::ScratchDir;

WorkspaceNeeds AllNeeds() { return {true, true, true}; }

class PipelineTest : public ::testing::Test {
 protected:
  void SetUp() override {
    scratch_ = ScratchDir(::testing::UnitTest::GetInstance()
                              ->current_test_info()
                              ->name());
    config_ = MiniConfig(scratch_);
  }
  void TearDown() override { fs::remove_all(scratch_); }

  fs::path scratch_;
  RunConfig config_;
};

TEST_F(PipelineTest, RepeatedRunsAreByteIdentical) {
  for (SystemKind kind : {SystemKind::kEap, SystemKind::kTextRank,
                          SystemKind::kEmoIntensity}) {
    auto a = scratch_ / "a";
    auto b = scratch_ / "b";
    WriteSystemRun(BuildWorkspace(config_, AllNeeds()), kind, a);
    WriteSystemRun(BuildWorkspace(config_, AllNeeds()), kind, b);
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
      auto other = b / entry.path().filename();
      ASSERT_TRUE(fs::exists(other)) << other;
      EXPECT_EQ(ReadAll(entry.path()), ReadAll(other)) << entry.path();
      ++files;
    }
    EXPECT_GE(files, 7u);
    fs::remove_all(a);
    fs::remove_all(b);
  }
}

TEST_F(PipelineTest, WorkspaceUsesTrainForVocabulary) {
  Workspace ws = BuildWorkspace(config_, AllNeeds());
  ASSERT_EQ(ws.corpora.size(), 3u);
  EXPECT_EQ(ws.EvaluationIndex(), *ws.IndexOf(Split::kTest));
  EXPECT_FALSE(ws.vocab.empty());
  EXPECT_EQ(ws.graph.num_vertices(), ws.vocab.size());
  EXPECT_TRUE(std::is_sorted(ws.vocab.stems().begin(), ws.vocab.stems().end()));
  for (std::size_t c = 0; c < ws.corpora.size(); ++c) {
    EXPECT_EQ(ws.ids[c].size(), ws.corpora[c].posts.size());
  }
}

TEST_F(PipelineTest, EvaluationFallsBackToValidation) {
  config_.corpora.pop_back();
  Workspace ws = BuildWorkspace(config_, AllNeeds());
  EXPECT_EQ(ws.corpora[ws.EvaluationIndex()].split, Split::kValidation);
}

TEST_F(PipelineTest, MissingEmbeddingsFailInEmbeddingStage) {
  config_.embeddings = scratch_ / "nope.bin";
  try {
    BuildWorkspace(config_, AllNeeds());
    FAIL() << "expected a stage error";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "embeddings");
  }
  // Systems without embeddings never touch the file.
  EXPECT_NO_THROW(BuildWorkspace(config_, {true, true, false}));
}

TEST_F(PipelineTest, MissingTrainFailsInVocabStage) {
  config_.corpora.erase(config_.corpora.begin());
  try {
    BuildWorkspace(config_, AllNeeds());
    FAIL() << "expected a stage error";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "vocab");
  }
}

TEST_F(PipelineTest, BadCorpusFailsInCorpusStage) {
  auto bad = scratch_ / "bad.jsonl";
  std::ofstream(bad) << "{\"post_id\": 3}\n";
  config_.corpora[0].path = bad;
  try {
    BuildWorkspace(config_, AllNeeds());
    FAIL() << "expected a stage error";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "corpus");
  }
}

TEST_F(PipelineTest, SinglePointGridFixesThresholds) {
  config_.threshold_grid = {0.45};
  SystemRun run = RunSystem(BuildWorkspace(config_, AllNeeds()), SystemKind::kEap);
  for (Emotion e : kAllEmotions) EXPECT_EQ(run.thresholds[e], 0.45);
  config_.threshold_grid = {};
  EXPECT_THROW(RunSystem(BuildWorkspace(config_, AllNeeds()), SystemKind::kEap),
               StageError);
}

TEST_F(PipelineTest, TunedThresholdsComeFromTheGrid) {
  SystemRun run = RunSystem(BuildWorkspace(config_, AllNeeds()), SystemKind::kEap);
  const auto grid = RunConfig::DefaultThresholdGrid();
  ASSERT_EQ(grid.size(), 11u);
  for (Emotion e : kAllEmotions) {
    EXPECT_NE(std::find(grid.begin(), grid.end(), run.thresholds[e]), grid.end());
  }
}

TEST_F(PipelineTest, TextRankSharesOneThreshold) {
  SystemRun run =
      RunSystem(BuildWorkspace(config_, AllNeeds()), SystemKind::kTextRank);
  for (Emotion e : kAllEmotions) {
    EXPECT_EQ(run.thresholds[e], run.thresholds[Emotion::kAnger]);
  }
}

TEST_F(PipelineTest, FixedThresholdOverridesTuning) {
  config_.fixed_threshold = 0.6;
  SystemRun run = RunSystem(BuildWorkspace(config_, AllNeeds()), SystemKind::kEap);
  for (Emotion e : kAllEmotions) EXPECT_EQ(run.thresholds[e], 0.6);
}

TEST_F(PipelineTest, ThresholdFileRoundTrip) {
  PerEmotion<double> t(0.35);
  t[Emotion::kFear] = 0.1 + 0.2;
  auto path = scratch_ / "t.tsv";
  {
    std::ofstream out(path);
    WriteThresholds(t, out);
  }
  auto back = ReadThresholds(path);
  for (Emotion e : kAllEmotions) EXPECT_EQ(back[e], t[e]);

  std::ofstream(scratch_ / "short.tsv") << "anger\t0.3\n";
  EXPECT_ANY_THROW(ReadThresholds(scratch_ / "short.tsv"));
}

TEST_F(PipelineTest, ConfigJsonRoundTrip) {
  config_.int_constant = 0.7;
  config_.meaning_pool = MeaningPool::kTrain;
  config_.score_scale = ScoreScale::kMax;
  config_.window_space = WindowSpace::kRaw;
  config_.seed = 42;
  RunConfig back = ConfigFromJson(ConfigJson(config_));
  EXPECT_EQ(ConfigJson(back), ConfigJson(config_));
  EXPECT_EQ(*back.int_constant, 0.7);
  EXPECT_EQ(back.corpora.size(), 3u);
}

TEST_F(PipelineTest, SummariesReadBackAsPredictions) {
  Workspace ws = BuildWorkspace(config_, AllNeeds());
  for (SystemKind kind : {SystemKind::kEap, SystemKind::kLead3}) {
    SystemRun run = RunSystem(ws, kind);
    std::ostringstream out;
    WriteSummaries(ws, run, out);
    auto path = scratch_ / "s.jsonl";
    std::ofstream(path) << out.str() << std::flush;
    auto back = ReadSummaries(path, ws.corpora[run.eval_corpus].posts);
    ASSERT_EQ(back.size(), run.predictions.size());
    for (std::size_t p = 0; p < back.size(); ++p) {
      for (Emotion e : kAllEmotions) EXPECT_EQ(back[p][e], run.predictions[p][e]);
    }
    const std::string text = out.str();
    std::size_t lines = std::count(text.begin(), text.end(), '\n');
    EXPECT_EQ(lines, 7 * ws.corpora[run.eval_corpus].posts.size());
  }
}

TEST_F(PipelineTest, DetectionMatchesNonEmptySelections) {
  Workspace ws = BuildWorkspace(config_, AllNeeds());
  SystemRun run = RunSystem(ws, SystemKind::kEap);
  const auto& posts = ws.corpora[run.eval_corpus].posts;
  BinaryCounts fear;
  for (std::size_t p = 0; p < posts.size(); ++p) {
    bool gold = !posts[p].gold[Emotion::kFear].empty();
    bool pred = !run.predictions[p][Emotion::kFear].empty();
    fear.tp += gold && pred;
    fear.fp += !gold && pred;
    fear.fn += gold && !pred;
  }
  EXPECT_EQ(run.report.per_emotion[Emotion::kFear].detection_f1, fear.F1());
}

TEST_F(PipelineTest, AblationsChangeOnlyTheirTerm) {
  Workspace ws = BuildWorkspace(config_, AllNeeds());
  SystemScores full = ScoreSystem(ws, SystemKind::kEap);
  SystemScores no_sim = ScoreSystem(ws, SystemKind::kEapNoSim);
  SystemScores no_int = ScoreSystem(ws, SystemKind::kEapNoInt);
  const std::size_t c = ws.EvaluationIndex();
  for (std::size_t p = 0; p < full.detail[c].size(); ++p) {
    for (Emotion e : kAllEmotions) {
      const auto& f = full.detail[c][p].emotions[e];
      const auto& s = no_sim.detail[c][p].emotions[e];
      EXPECT_EQ(f.relevance, s.relevance);
      for (double m : s.meaning) EXPECT_EQ(m, 1.0);
      EXPECT_EQ(s.final, s.relevance);
    }
  }
  EXPECT_NE((*full.relevances)[Emotion::kFear].scores,
            (*no_int.relevances)[Emotion::kFear].scores);
}

TEST(PipelineTopTerms, TiesGoToLowerIds) {
  std::vector<double> s = {0.1, 0.5, 0.5, 0.2, 0.5};
  EXPECT_EQ(TopTerms(s, 2), (std::vector<WordId>{1, 2}));
  EXPECT_EQ(TopTerms(s, 0), (std::vector<WordId>{}));
  EXPECT_EQ(TopTerms(s, 9).size(), 5u);
}

TEST_F(PipelineTest, DropTermsAtZeroReproducesFullRun) {
  Workspace ws = BuildWorkspace(config_, AllNeeds());
  SystemRun full = RunSystem(ws, SystemKind::kEap);
  std::vector<std::size_t> ks = {0, 2, 4};
  auto points = DropTopTerms(ws, full, ks);
  ASSERT_EQ(points.size(), 3u);
  EXPECT_EQ(points[0].average_f1, full.report.average.detection_f1);
  for (Emotion e : kAllEmotions) {
    EXPECT_EQ(points[0].detection_f1[e], full.report.per_emotion[e].detection_f1);
  }
  std::vector<std::size_t> too_many = {ws.vocab.size() + 1};
  EXPECT_THROW(DropTopTerms(ws, full, too_many), StageError);
  SystemRun lead = RunSystem(ws, SystemKind::kLead1);
  EXPECT_THROW(DropTopTerms(ws, lead, ks), StageError);
}

TEST_F(PipelineTest, ManifestRecordsInputsAndChoices) {
  Workspace ws = BuildWorkspace(config_, AllNeeds());
  SystemRun run = WriteSystemRun(ws, SystemKind::kEap, scratch_ / "eap");
  std::string manifest = ReadAll(scratch_ / "eap" / "manifest.json");
  EXPECT_NE(manifest.find(Sha256File(*config_.intensity_lexicon)),
            std::string::npos);
  EXPECT_NE(manifest.find("\"threshold_rule\""), std::string::npos);
  EXPECT_NE(manifest.find("\"converged\": true"), std::string::npos);
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  // Replaying the recorded config reproduces the run.
  RunConfig replay = ConfigFromJson(manifest);
  WriteSystemRun(BuildWorkspace(replay, AllNeeds()), SystemKind::kEap,
                 scratch_ / "replay");
  EXPECT_EQ(ReadAll(scratch_ / "eap" / "summaries.jsonl"),
            ReadAll(scratch_ / "replay" / "summaries.jsonl"));
}

std::string Quote(const fs::path& p) { return "'" + p.string() + "'"; }

int Shell(const std::string& cmd) {
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_F(PipelineTest, CommandLineRunAndReplay) {
  const char* cli = std::getenv("EAP_CLI");
  if (cli == nullptr) GTEST_SKIP() << "EAP_CLI not set";
  const fs::path dir = testing::FixtureDir();
  std::string base = Quote(cli);
  std::string corpora =
      " --corpus " + Quote(dir / "train.jsonl") + " --split train" +
      " --corpus " + Quote(dir / "validation.jsonl") + " --split validation" +
      " --corpus " + Quote(dir / "test.jsonl") + " --split test" +
      " --intensity-lex " + Quote(dir / "intensity.tsv") + " --emolex " +
      Quote(dir / "emolex.tsv") + " --min-freq 2";
  std::string inputs = corpora + " --embeddings " + Quote(*config_.embeddings);
  auto out = scratch_ / "run";
  ASSERT_EQ(Shell(base + " run" + inputs + " --out " + Quote(out) +
                  " > /dev/null"),
            0);
  std::string table = ReadAll(out / "report.tsv");
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 10);
  EXPECT_TRUE(fs::exists(out / "drop_terms.tsv"));
  EXPECT_TRUE(fs::exists(out / "eap" / "summaries.jsonl"));

  auto replay = scratch_ / "replay";
  ASSERT_EQ(Shell(base + " summarize --manifest " +
                  Quote(out / "eap" / "manifest.json") + " --out " +
                  Quote(replay) + " > /dev/null"),
            0);
  EXPECT_EQ(ReadAll(out / "eap" / "summaries.jsonl"),
            ReadAll(replay / "summaries.jsonl"));

  auto eval = scratch_ / "eval";
  ASSERT_EQ(Shell(base + " evaluate --pred " + Quote(out / "eap") + " --gold " +
                  Quote(dir / "test.jsonl") + " --split test --against " +
                  Quote(out / "lead1") + " --out " + Quote(eval) +
                  " > /dev/null"),
            0);
  EvalReport r = ReportFromJson(ReadAll(eval / "report.json"));
  EvalReport orig = ReportFromJson(ReadAll(out / "eap" / "report.json"));
  EXPECT_EQ(r.average.rouge_l, orig.average.rouge_l);
  ASSERT_TRUE(r.significance);
  EXPECT_EQ(r.significance->against, "lead1");

  auto err = scratch_ / "err.txt";
  EXPECT_EQ(Shell(base + " summarize" + corpora + " --embeddings " +
                  Quote(scratch_ / "missing.bin") + " --out " +
                  Quote(scratch_ / "x") + " 2> " + Quote(err)),
            1);
  EXPECT_NE(ReadAll(err).find("eap: embeddings:"), std::string::npos);
}

TEST_F(PipelineTest, HashEmbedToolCoversFixture) {
  const char* tool = std::getenv("EAP_HASH_EMBED");
  if (tool == nullptr) GTEST_SKIP() << "EAP_HASH_EMBED not set";
  const fs::path dir = testing::FixtureDir();
  auto out = scratch_ / "h.bin";
  ASSERT_EQ(Shell(Quote(tool) + " --corpus " + Quote(dir / "train.jsonl") +
                  " --corpus " + Quote(dir / "test.jsonl") + " --out " +
                  Quote(out) + " --dim 16 > /dev/null"),
            0);
  auto store = LoadEmbeddings(out);
  EXPECT_EQ(store.dim(), 16u);
  store.CheckCovers(LoadCorpus(dir / "test.jsonl", Split::kTest));
}

}  // namespace
}  // namespace eap
