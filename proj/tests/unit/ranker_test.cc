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

#include "eap/ranker.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "support/oracles.h"

namespace eap {
namespace {

using testing::DenseEdgeWeights;
using testing::DensePageRank;
using testing::RandomCounts;
using testing::ToMatrix;

PageRankOptions Tight() {
  PageRankOptions o;
  o.tolerance = 1e-13;
  o.max_iterations = 2000;
  return o;
}

double MaxAbsDiff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

std::vector<std::vector<std::uint64_t>> Complete(std::size_t n) {
  std::vector<std::vector<std::uint64_t>> c(n, std::vector<std::uint64_t>(n, 1));
  for (std::size_t i = 0; i < n; ++i) c[i][i] = 0;
  return c;
}

TEST(RankerTest, CompleteGraphUniformJumpIsUniform) {
  WordGraph g = BuildGraph(ToMatrix(Complete(6)));
  auto r = UniformPageRank(g, {});
  ASSERT_TRUE(r.converged);
  for (double s : r.scores) EXPECT_NEAR(s, 1.0 / 6, 1e-12);
}

TEST(RankerTest, MatchesDenseOracleOnRandomGraphs) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 50;
    auto c = RandomCounts(n, 0.15, rng);
    WordGraph g = BuildGraph(ToMatrix(c));
    auto jump = testing::RandomDistribution(n, rng);
    auto r = BiasedPageRank(g, jump, Tight());
    ASSERT_TRUE(r.converged);
    auto oracle = DensePageRank(DenseEdgeWeights(c), jump, 0.85);
    EXPECT_LT(MaxAbsDiff(r.scores, oracle), 1e-8) << "trial " << trial;
  }
}

TEST(RankerTest, EveryIterateIsADistribution) {
  std::mt19937_64 rng(3);
  auto c = RandomCounts(30, 0.1, rng);
  WordGraph g = BuildGraph(ToMatrix(c));
  auto jump = testing::RandomDistribution(30, rng);
  PageRankOptions o;
  int calls = 0;
  o.observer = [&](int, std::span<const double> s) {
    ++calls;
    double sum = 0.0;
    for (double x : s) {
      EXPECT_GE(x, 0.0);
      sum += x;
    }
    EXPECT_NEAR(sum, 1.0, 1e-6);
  };
  auto r = BiasedPageRank(g, jump, o);
  EXPECT_EQ(calls, r.iterations);
  EXPECT_LT(r.residual, o.tolerance);
}

TEST(RankerTest, StarCenterOutranksLeaves) {
  std::vector<std::vector<std::uint64_t>> c(5, std::vector<std::uint64_t>(5, 0));
  for (std::size_t leaf = 1; leaf < 5; ++leaf) c[0][leaf] = c[leaf][0] = 1;
  WordGraph g = BuildGraph(ToMatrix(c));
  auto r = UniformPageRank(g, Tight());
  auto oracle = DensePageRank(DenseEdgeWeights(c), std::vector<double>(5, 0.2), 0.85);
  EXPECT_LT(MaxAbsDiff(r.scores, oracle), 1e-10);
  for (std::size_t leaf = 1; leaf < 5; ++leaf) {
    EXPECT_GT(r.scores[0], r.scores[leaf]);
    EXPECT_NEAR(r.scores[leaf], r.scores[1], 1e-14);
  }
}

TEST(RankerTest, TwoEqualCliquesAreSymmetric) {
  std::vector<std::vector<std::uint64_t>> c(8, std::vector<std::uint64_t>(8, 0));
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      if (i != j && (i < 4) == (j < 4)) c[i][j] = 3;
    }
  }
  auto r = UniformPageRank(BuildGraph(ToMatrix(c)), Tight());
  for (double s : r.scores) EXPECT_NEAR(s, 0.125, 1e-12);
}

TEST(RankerTest, UniformEqualsBiasedWithUniformJump) {
  std::mt19937_64 rng(8);
  WordGraph g = BuildGraph(ToMatrix(RandomCounts(20, 0.2, rng)));
  auto a = UniformPageRank(g, {});
  auto b = BiasedPageRank(g, UniformJump(20), {});
  EXPECT_EQ(a.scores, b.scores);
}

TEST(RankerTest, SmallDampingApproachesJump) {
  std::mt19937_64 rng(12);
  WordGraph g = BuildGraph(ToMatrix(RandomCounts(15, 0.3, rng)));
  auto jump = testing::RandomDistribution(15, rng);
  PageRankOptions o;
  o.damping = 1e-9;
  auto r = BiasedPageRank(g, jump, o);
  EXPECT_LT(MaxAbsDiff(r.scores, jump), 1e-8);
}

TEST(RankerTest, DanglingMassReturnsThroughJump) {
  // Vertex 2 has no edges.
  std::vector<std::vector<std::uint64_t>> c = {{0, 2, 0}, {2, 0, 0}, {0, 0, 0}};
  std::vector<double> jump = {0.2, 0.3, 0.5};
  auto r = BiasedPageRank(BuildGraph(ToMatrix(c)), jump, Tight());
  auto oracle = DensePageRank(DenseEdgeWeights(c), jump, 0.85);
  EXPECT_LT(MaxAbsDiff(r.scores, oracle), 1e-10);
  double sum = r.scores[0] + r.scores[1] + r.scores[2];
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(RankerTest, RejectsBadArguments) {
  WordGraph g = BuildGraph(ToMatrix(Complete(3)));
  PageRankOptions o;
  o.damping = 1.0;
  EXPECT_THROW(BiasedPageRank(g, UniformJump(3), o), std::invalid_argument);
  o.damping = 0.0;
  EXPECT_THROW(BiasedPageRank(g, UniformJump(3), o), std::invalid_argument);
  EXPECT_THROW(BiasedPageRank(g, UniformJump(4), {}), std::invalid_argument);
}

TEST(RankerTest, NonConvergenceIsReportedNotThrown) {
  std::mt19937_64 rng(1);
  WordGraph g = BuildGraph(ToMatrix(RandomCounts(20, 0.3, rng)));
  PageRankOptions o;
  o.max_iterations = 2;
  o.tolerance = 1e-15;
  auto r = BiasedPageRank(g, testing::RandomDistribution(20, rng), o);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 2);
}

TEST(RankerTest, RaisingJumpProbabilityNeverLowersRank) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    WordGraph g = BuildGraph(ToMatrix(RandomCounts(20, 0.2, rng)));
    auto jump = testing::RandomDistribution(20, rng);
    const std::size_t w = rng() % 20;
    auto raised = jump;
    raised[w] += u(rng);
    double sum = 0.0;
    for (double p : raised) sum += p;
    for (double& p : raised) p /= sum;
    auto a = BiasedPageRank(g, jump, Tight());
    auto b = BiasedPageRank(g, raised, Tight());
    EXPECT_GE(b.scores[w], a.scores[w] - 1e-12) << "trial " << trial;
  }
}

TEST(RankerTest, SentenceRelevanceIsMeanOverStems) {
  std::vector<double> r = {0.2, 0.4, 0.5};
  std::vector<WordId> s1 = {0, 1}, s2 = {}, s3 = {2, 2};
  EXPECT_DOUBLE_EQ(SentenceRelevance(s1, r), 0.3);
  EXPECT_EQ(SentenceRelevance(s2, r), 0.0);
  EXPECT_DOUBLE_EQ(SentenceRelevance(s3, r), 0.5);
}

EmbeddingStore ThreeVectorStore() {
  // Query q = e1; pool sentences at cosine 1.0, 0.5 and 0.0 from q.
  EmbeddingStore store(2);
  std::vector<float> q = {1, 0}, s0 = {1, 0}, s1 = {0.5f, std::sqrt(0.75f)},
                     s2 = {0, 1};
  store.Add({"q", 0}, q);
  store.Add({"p", 0}, s0);
  store.Add({"p", 1}, s1);
  store.Add({"p", 2}, s2);
  return store;
}

TEST(RankerTest, MeaningScoreWorkedExample) {
  EmbeddingStore store = ThreeVectorStore();
  std::vector<std::size_t> pool = {1, 2, 3};
  std::vector<double> rel = {0.3, 0.2, 0.9};
  EXPECT_NEAR(MeaningScore(store.Row(0), store, pool, rel), 0.4 / 3, 1e-7);

  PerEmotion<std::vector<double>> per(rel);
  std::vector<std::size_t> queries = {0};
  auto batched = MeaningScores(store, queries, pool, per);
  for (Emotion e : kAllEmotions) EXPECT_NEAR(batched[0][e], 0.4 / 3, 1e-7);
}

TEST(RankerTest, MeaningSingletonPoolAndZeroRelevance) {
  EmbeddingStore store = ThreeVectorStore();
  std::vector<std::size_t> pool = {0};
  std::vector<double> rel = {0.7};
  EXPECT_NEAR(MeaningScore(store.Row(0), store, pool, rel), 0.7, 1e-7);
  std::vector<std::size_t> full = {1, 2, 3};
  std::vector<double> zero(3, 0.0);
  EXPECT_EQ(MeaningScore(store.Row(0), store, full, zero), 0.0);
}

TEST(RankerTest, NegativeCosinesContributeNothing) {
  EmbeddingStore store(2);
  std::vector<float> q = {1, 0}, opp = {-1, 0};
  store.Add({"q", 0}, q);
  store.Add({"o", 0}, opp);
  std::vector<std::size_t> pool = {1};
  std::vector<double> rel = {1.0};
  EXPECT_EQ(MeaningScore(store.Row(0), store, pool, rel), 0.0);
}

TEST(RankerTest, BatchedMeaningMatchesSingleQuery) {
  std::mt19937_64 rng(4);
  std::normal_distribution<float> g;
  EmbeddingStore store(16);
  for (std::uint32_t i = 0; i < 150; ++i) {
    std::vector<float> v(16);
    for (float& x : v) x = g(rng);
    store.Add({"p", i}, v);
  }
  std::vector<std::size_t> queries(150), pool;
  for (std::size_t i = 0; i < 150; ++i) queries[i] = i;
  for (std::size_t i = 0; i < 150; i += 2) pool.push_back(i);
  PerEmotion<std::vector<double>> rel;
  for (Emotion e : kAllEmotions) {
    rel[e] = testing::RandomDistribution(pool.size(), rng);
  }
  auto batched = MeaningScores(store, queries, pool, rel);
  for (std::size_t q = 0; q < queries.size(); q += 7) {
    for (Emotion e : kAllEmotions) {
      EXPECT_NEAR(batched[q][e], MeaningScore(store.Row(q), store, pool, rel[e]),
                  1e-12);
    }
  }
}

PerEmotion<RelevanceVector> FlatRelevance(std::vector<double> scores) {
  PerEmotion<RelevanceVector> out;
  for (Emotion e : kAllEmotions) out[e].scores = scores;
  return out;
}

TEST(RankerTest, FinalIsRelevanceTimesMeaning) {
  std::vector<std::vector<WordId>> ids = {{0}, {1}, {0, 1}};
  std::vector<PerEmotion<double>> meaning = {PerEmotion<double>(0.5),
                                             PerEmotion<double>(2.0),
                                             PerEmotion<double>(0.0)};
  auto ps = ComputePostScores("p", ids, FlatRelevance({0.25, 0.75}), meaning);
  for (Emotion e : kAllEmotions) {
    const auto& s = ps.emotions[e];
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_EQ(s.final[i], s.relevance[i] * s.meaning[i]);
    }
  }
  auto no_sim = ComputePostScores("p", ids, FlatRelevance({0.25, 0.75}), std::nullopt);
  EXPECT_EQ(no_sim.emotions[Emotion::kFear].final,
            no_sim.emotions[Emotion::kFear].relevance);
}

TEST(RankerTest, SelectAboveIsStrictAndOrdered) {
  std::vector<double> f = {0.5, 0.2, 0.4};
  EXPECT_EQ(SelectAbove(f, 0.35), (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(SelectAbove(f, 0.5), (std::vector<std::size_t>{}));
  std::vector<double> g = {0.0, 0.1, 0.0};
  EXPECT_EQ(SelectAbove(g, 0.0), (std::vector<std::size_t>{1}));
}

TEST(RankerTest, EmptySelectionMeansAbsent) {
  PostScores ps;
  ps.post_id = "p";
  for (Emotion e : kAllEmotions) ps.emotions[e].final = {0.1, 0.2};
  ps.emotions[Emotion::kFear].final = {0.9, 0.1};
  auto scaler = ScoreScaler::Fit(ScoreScale::kRaw, {});
  auto summaries = ScorePost(ps, scaler, PerEmotion<double>(0.35));
  auto present = DetectEmotions(summaries);
  for (Emotion e : kAllEmotions) {
    EXPECT_EQ(present[e], e == Emotion::kFear);
    EXPECT_EQ(present[e], !summaries[e].selected.empty());
  }
  EXPECT_EQ(summaries[Emotion::kFear].selected, (std::vector<std::size_t>{0}));
}

TEST(RankerTest, ScalersAreMonotone) {
  PerEmotion<std::vector<double>> ref(std::vector<double>{0.4, 0.1, 0.3, 0.2});
  auto q = ScoreScaler::Fit(ScoreScale::kQuantile, ref);
  EXPECT_DOUBLE_EQ(q.Apply(Emotion::kJoy, 0.1), 0.0);
  EXPECT_DOUBLE_EQ(q.Apply(Emotion::kJoy, 0.3), 0.5);
  EXPECT_DOUBLE_EQ(q.Apply(Emotion::kJoy, 0.5), 1.0);
  auto m = ScoreScaler::Fit(ScoreScale::kMax, ref);
  EXPECT_DOUBLE_EQ(m.Apply(Emotion::kJoy, 0.2), 0.5);
  auto raw = ScoreScaler::Fit(ScoreScale::kRaw, ref);
  EXPECT_DOUBLE_EQ(raw.Apply(Emotion::kJoy, 0.123), 0.123);
  EXPECT_THROW(ParseScoreScale("zscore"), std::invalid_argument);
}

TEST(RankerTest, PositiveRescalingKeepsSelectionOrder) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> f(12);
  for (double& x : f) x = u(rng);
  std::vector<double> scaled = f;
  for (double& x : scaled) x *= 37.0;
  // Rank order is unchanged; the threshold moves with the scale.
  auto order = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
    return idx;
  };
  EXPECT_EQ(order(f), order(scaled));
  EXPECT_EQ(SelectAbove(f, 0.5), SelectAbove(scaled, 0.5 * 37.0));
  // The quantile scale absorbs the constant entirely.
  auto a = ScoreScaler::Fit(ScoreScale::kQuantile, PerEmotion<std::vector<double>>(f));
  auto b = ScoreScaler::Fit(ScoreScale::kQuantile,
                            PerEmotion<std::vector<double>>(scaled));
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_EQ(a.Apply(Emotion::kAnger, f[i]), b.Apply(Emotion::kAnger, scaled[i]));
  }
}

TEST(RankerTest, AblateIntConstantAndLexiconEmptyEmotion) {
  std::mt19937_64 rng(6);
  auto c = RandomCounts(10, 0.4, rng);
  WordGraph g = BuildGraph(ToMatrix(c));
  std::vector<std::string> stems;
  for (int i = 0; i < 10; ++i) stems.push_back("w" + std::to_string(i));
  Vocabulary vocab(stems, std::vector<std::size_t>(10, 1));
  IntensityLexicon lex;
  lex.Set("w3", Emotion::kFear, 0.9);
  lex.Set("w5", Emotion::kFear, 0.3);
  EXPECT_DOUBLE_EQ(DefaultAblationConstant(lex, Emotion::kFear), 0.6);
  EXPECT_THROW(DefaultAblationConstant(lex, Emotion::kJoy), LexiconError);

  auto r = AblateInt(g, vocab, lex, Emotion::kFear, 0.6, {}, {});
  double sum = 0.0;
  for (double s : r.scores) sum += s;
  EXPECT_NEAR(sum, 1.0, 1e-6);
  EXPECT_THROW(AblateInt(g, vocab, lex, Emotion::kFear, 0.1, {}, {}),
               std::invalid_argument);

  // No joy entries: every word weighs c, which is the uniform jump.
  auto joy = AblateInt(g, vocab, lex, Emotion::kJoy, 0.6, {}, {});
  auto uniform = UniformPageRank(g, {});
  EXPECT_LT(MaxAbsDiff(joy.scores, uniform.scores), 1e-15);
}

TEST(RankerTest, EmotionRelevancesMatchSequentialRuns) {
  std::mt19937_64 rng(10);
  WordGraph g = BuildGraph(ToMatrix(RandomCounts(12, 0.3, rng)));
  std::vector<std::string> stems;
  for (int i = 0; i < 12; ++i) stems.push_back("w" + std::to_string(10 + i));
  Vocabulary vocab(stems, std::vector<std::size_t>(12, 1));
  IntensityLexicon lex;
  lex.Set("w11", Emotion::kAnger, 0.8);
  lex.Set("w15", Emotion::kTrust, 0.4);
  auto all = EmotionRelevances(g, vocab, lex, {}, {});
  for (Emotion e : kAllEmotions) {
    auto one = BiasedPageRank(g, JumpDistribution(e, vocab, lex, {}), {});
    EXPECT_EQ(all[e].scores, one.scores);
    EXPECT_EQ(all[e].emotion, e);
  }
}

}  // namespace
}  // namespace eap
