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

#ifndef EAP_RANKER_H_
#define EAP_RANKER_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eap/embeddings.h"
#include "eap/emotion.h"
#include "eap/lexicons.h"
#include "eap/textpipe.h"
#include "eap/wordgraph.h"

namespace eap {

struct PageRankOptions {
  double damping = 0.85;
  // Stop once the L1 change between iterates drops below this.
  double tolerance = 1e-8;
  int max_iterations = 100;
  // Called after every iteration with the new iterate (tests use this to
  // check stochasticity along the way).
  std::function<void(int iteration, std::span<const double> scores)> observer;
};

struct RelevanceVector {
  std::optional<Emotion> emotion;  // nullopt for the uniform run
  std::vector<double> scores;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

// Stationary vector of R = d * T^T R + (1 - d) * jump, where T is the edge
// weight matrix row-normalized by weighted degree. Mass sitting on vertices
// without edges is sent back through `jump`. Non-convergence within
// max_iterations is reported in the result, not thrown.
RelevanceVector BiasedPageRank(const WordGraph& graph,
                               std::span<const double> jump,
                               const PageRankOptions& options);

RelevanceVector UniformPageRank(const WordGraph& graph,
                                const PageRankOptions& options);

// Mean relevance over the sentence's in-vocabulary stems (repeats count);
// 0 for a sentence with none.
double SentenceRelevance(std::span<const WordId> sentence,
                         std::span<const double> relevance);

// Meaning score of one query against a pool for one emotion:
//   sum_s max(0, cos(q, s)) * pool_relevance[s] / |pool|.
double MeaningScore(std::span<const float> query, const EmbeddingStore& store,
                    std::span<const std::size_t> pool_rows,
                    std::span<const double> pool_relevance);

// All seven meaning scores for many queries at once. `pool_relevance[e]`
// holds R_e(s) for each pool row. Each cosine is computed once and reused
// across emotions; the similarity matrix is never materialized.
std::vector<PerEmotion<double>> MeaningScores(
    const EmbeddingStore& store, std::span<const std::size_t> query_rows,
    std::span<const std::size_t> pool_rows,
    const PerEmotion<std::vector<double>>& pool_relevance);

struct EmotionScores {
  std::vector<double> relevance;
  std::vector<double> meaning;
  std::vector<double> final;  // relevance * meaning
};

struct PostScores {
  std::string post_id;
  PerEmotion<EmotionScores> emotions;
};

// Sentence relevance, meaning and fused score for every sentence of a post.
// `meaning` is indexed [sentence]; pass nullopt to drop the meaning term
// (the -sim ablation), which records meaning = 1 so final == relevance.
PostScores ComputePostScores(
    std::string post_id, std::span<const std::vector<WordId>> sentence_ids,
    const PerEmotion<RelevanceVector>& relevance,
    const std::optional<std::vector<PerEmotion<double>>>& meaning);

// Monotone per-emotion map from fused scores to a threshold scale.
enum class ScoreScale {
  kRaw,       // identity
  kMax,       // divide by the largest reference score
  kQuantile,  // fraction of reference scores strictly below
};

std::string_view ScoreScaleName(ScoreScale scale);
ScoreScale ParseScoreScale(std::string_view name);

class ScoreScaler {
 public:
  ScoreScaler() = default;
  static ScoreScaler Fit(ScoreScale scale,
                         const PerEmotion<std::vector<double>>& reference);

  double Apply(Emotion e, double score) const;
  ScoreScale scale() const { return scale_; }

 private:
  ScoreScale scale_ = ScoreScale::kRaw;
  PerEmotion<std::vector<double>> sorted_;
  PerEmotion<double> max_{0.0};
};

struct EmotionSummary {
  std::string post_id;
  Emotion emotion = Emotion::kAnger;
  std::vector<std::size_t> selected;  // increasing
  double threshold = 0.0;
};

// Indices with score > t (strict), in document order.
std::vector<std::size_t> SelectAbove(std::span<const double> scores, double t);

// Thresholds each emotion's scaled fused scores. An empty selection means
// the emotion is judged absent.
PerEmotion<EmotionSummary> ScorePost(const PostScores& scores,
                                     const ScoreScaler& scaler,
                                     const PerEmotion<double>& thresholds);

PerEmotion<bool> DetectEmotions(const PerEmotion<EmotionSummary>& summaries);

// Default -int constant: the mean intensity of the lexicon for e.
double DefaultAblationConstant(const IntensityLexicon& lexicon, Emotion e);

// Biased PageRank where every lexicon word for e weighs `lexicon_constant`
// and all others weigh options.floor. Requires lexicon_constant > floor.
RelevanceVector AblateInt(const WordGraph& graph, const Vocabulary& vocab,
                          const IntensityLexicon& lexicon, Emotion e,
                          double lexicon_constant,
                          const ImportanceOptions& options,
                          const PageRankOptions& pagerank);

// Per-emotion biased PageRanks, run concurrently.
PerEmotion<RelevanceVector> EmotionRelevances(
    const WordGraph& graph, const Vocabulary& vocab,
    const IntensityLexicon& lexicon, const ImportanceOptions& options,
    const PageRankOptions& pagerank, std::span<const bool> removed = {});

}  // namespace eap

#endif  // EAP_RANKER_H_
