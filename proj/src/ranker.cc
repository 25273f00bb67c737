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

#include <algorithm>
#include <future>
#include <stdexcept>
#include <thread>

#include "eap/kernels.h"

namespace eap {

RelevanceVector BiasedPageRank(const WordGraph& graph,
                               std::span<const double> jump,
                               const PageRankOptions& options) {
  const std::size_t n = graph.num_vertices();
  if (!(options.damping > 0.0 && options.damping < 1.0)) {
    throw std::invalid_argument("damping must lie in (0, 1)");
  }
  if (!(options.tolerance > 0.0)) {
    throw std::invalid_argument("tolerance must be > 0");
  }
  if (jump.size() != n) {
    throw std::invalid_argument("jump distribution has " +
                                std::to_string(jump.size()) +
                                " entries for a graph of " + std::to_string(n));
  }

  const kernels::KernelTable& k = kernels::Active();
  const double d = options.damping;

  std::vector<double> inv_degree(n, 0.0);
  std::vector<std::size_t> dangling;
  for (std::size_t i = 0; i < n; ++i) {
    double deg = graph.WeightedDegree(static_cast<WordId>(i));
    if (deg > 0.0) {
      inv_degree[i] = 1.0 / deg;
    } else {
      dangling.push_back(i);
    }
  }

  RelevanceVector result;
  result.scores.assign(jump.begin(), jump.end());
  std::vector<double> next(n);
  std::vector<double> scaled(n);

  for (int it = 1; it <= options.max_iterations; ++it) {
    std::vector<double>& cur = result.scores;
    k.mul_f64(cur.data(), inv_degree.data(), scaled.data(), n);
    k.csr_spmv_f64(graph.row_ptr().data(), graph.cols().data(),
                   graph.weights().data(), scaled.data(), next.data(), n);
    double dangling_mass = 0.0;
    for (std::size_t i : dangling) dangling_mass += cur[i];
    k.axpby_f64(d, next.data(), d * dangling_mass + (1.0 - d), jump.data(), n);

    result.residual = k.l1_distance_f64(next.data(), cur.data(), n);
    result.iterations = it;
    std::swap(cur, next);
    if (options.observer) options.observer(it, result.scores);
    if (result.residual < options.tolerance) {
      result.converged = true;
      break;
    }
  }
  return result;
}

RelevanceVector UniformPageRank(const WordGraph& graph,
                                const PageRankOptions& options) {
  auto jump = UniformJump(graph.num_vertices());
  return BiasedPageRank(graph, jump, options);
}

double SentenceRelevance(std::span<const WordId> sentence,
                         std::span<const double> relevance) {
  if (sentence.empty()) return 0.0;
  double sum = 0.0;
  for (WordId w : sentence) sum += relevance[w];
  return sum / static_cast<double>(sentence.size());
}

double MeaningScore(std::span<const float> query, const EmbeddingStore& store,
                    std::span<const std::size_t> pool_rows,
                    std::span<const double> pool_relevance) {
  if (pool_rows.empty()) throw std::invalid_argument("empty meaning pool");
  if (pool_rows.size() != pool_relevance.size()) {
    throw std::invalid_argument("pool relevance size mismatch");
  }
  double acc = 0.0;
  for (std::size_t p = 0; p < pool_rows.size(); ++p) {
    double sim = kernels::Dot(query, store.Row(pool_rows[p]));
    if (sim > 0.0) acc += sim * pool_relevance[p];
  }
  return acc / static_cast<double>(pool_rows.size());
}

std::vector<PerEmotion<double>> MeaningScores(
    const EmbeddingStore& store, std::span<const std::size_t> query_rows,
    std::span<const std::size_t> pool_rows,
    const PerEmotion<std::vector<double>>& pool_relevance) {
  if (pool_rows.empty()) throw std::invalid_argument("empty meaning pool");
  for (Emotion e : kAllEmotions) {
    if (pool_relevance[e].size() != pool_rows.size()) {
      throw std::invalid_argument("pool relevance size mismatch");
    }
  }
  // Pool-major copy of the relevances so the inner update touches one line.
  std::vector<double> u(pool_rows.size() * kNumEmotions);
  for (std::size_t p = 0; p < pool_rows.size(); ++p) {
    for (Emotion e : kAllEmotions) {
      u[p * kNumEmotions + static_cast<std::size_t>(e)] = pool_relevance[e][p];
    }
  }
  const auto dot = kernels::Active().dot_f32;
  const std::size_t dim = store.dim();
  const double inv_pool = 1.0 / static_cast<double>(pool_rows.size());

  std::vector<PerEmotion<double>> out(query_rows.size(), PerEmotion<double>(0.0));
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t q = begin; q < end; ++q) {
      const float* qv = store.Row(query_rows[q]).data();
      double acc[kNumEmotions] = {};
      for (std::size_t p = 0; p < pool_rows.size(); ++p) {
        double sim = dot(qv, store.Row(pool_rows[p]).data(), dim);
        if (sim <= 0.0) continue;
        const double* up = u.data() + p * kNumEmotions;
        for (std::size_t e = 0; e < kNumEmotions; ++e) acc[e] += sim * up[e];
      }
      for (Emotion e : kAllEmotions) {
        out[q][e] = acc[static_cast<std::size_t>(e)] * inv_pool;
      }
    }
  };

  const std::size_t threads = std::clamp<std::size_t>(
      std::thread::hardware_concurrency(), 1, 16);
  if (threads == 1 || query_rows.size() < 64) {
    work(0, query_rows.size());
    return out;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = (query_rows.size() + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    std::size_t begin = t * chunk;
    std::size_t end = std::min(query_rows.size(), begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(work, begin, end);
  }
  return out;
}

PostScores ComputePostScores(
    std::string post_id, std::span<const std::vector<WordId>> sentence_ids,
    const PerEmotion<RelevanceVector>& relevance,
    const std::optional<std::vector<PerEmotion<double>>>& meaning) {
  if (meaning && meaning->size() != sentence_ids.size()) {
    throw std::invalid_argument("meaning scores do not cover the post");
  }
  PostScores out;
  out.post_id = std::move(post_id);
  const std::size_t n = sentence_ids.size();
  for (Emotion e : kAllEmotions) {
    EmotionScores& s = out.emotions[e];
    s.relevance.resize(n);
    s.meaning.resize(n);
    s.final.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      s.relevance[i] = SentenceRelevance(sentence_ids[i], relevance[e].scores);
      s.meaning[i] = meaning ? (*meaning)[i][e] : 1.0;
      s.final[i] = s.relevance[i] * s.meaning[i];
    }
  }
  return out;
}

std::string_view ScoreScaleName(ScoreScale scale) {
  switch (scale) {
    case ScoreScale::kRaw: return "raw";
    case ScoreScale::kMax: return "max";
    case ScoreScale::kQuantile: return "quantile";
  }
  return "raw";
}

ScoreScale ParseScoreScale(std::string_view name) {
  if (name == "raw") return ScoreScale::kRaw;
  if (name == "max") return ScoreScale::kMax;
  if (name == "quantile") return ScoreScale::kQuantile;
  throw std::invalid_argument("unknown score scale '" + std::string(name) +
                              "'");
}

ScoreScaler ScoreScaler::Fit(ScoreScale scale,
                             const PerEmotion<std::vector<double>>& reference) {
  ScoreScaler s;
  s.scale_ = scale;
  for (Emotion e : kAllEmotions) {
    s.sorted_[e] = reference[e];
    std::sort(s.sorted_[e].begin(), s.sorted_[e].end());
    s.max_[e] = s.sorted_[e].empty() ? 0.0 : s.sorted_[e].back();
  }
  return s;
}

double ScoreScaler::Apply(Emotion e, double score) const {
  switch (scale_) {
    case ScoreScale::kRaw:
      return score;
    case ScoreScale::kMax:
      return max_[e] > 0.0 ? score / max_[e] : score;
    case ScoreScale::kQuantile: {
      const auto& ref = sorted_[e];
      if (ref.empty()) return score;
      auto below = std::lower_bound(ref.begin(), ref.end(), score) - ref.begin();
      return static_cast<double>(below) / static_cast<double>(ref.size());
    }
  }
  return score;
}

std::vector<std::size_t> SelectAbove(std::span<const double> scores, double t) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] > t) out.push_back(i);
  }
  return out;
}

PerEmotion<EmotionSummary> ScorePost(const PostScores& scores,
                                     const ScoreScaler& scaler,
                                     const PerEmotion<double>& thresholds) {
  PerEmotion<EmotionSummary> out;
  for (Emotion e : kAllEmotions) {
    const auto& fin = scores.emotions[e].final;
    std::vector<double> scaled(fin.size());
    for (std::size_t i = 0; i < fin.size(); ++i) {
      scaled[i] = scaler.Apply(e, fin[i]);
    }
    EmotionSummary& s = out[e];
    s.post_id = scores.post_id;
    s.emotion = e;
    s.threshold = thresholds[e];
    s.selected = SelectAbove(scaled, thresholds[e]);
  }
  return out;
}

PerEmotion<bool> DetectEmotions(const PerEmotion<EmotionSummary>& summaries) {
  PerEmotion<bool> out(false);
  for (Emotion e : kAllEmotions) out[e] = !summaries[e].selected.empty();
  return out;
}

double DefaultAblationConstant(const IntensityLexicon& lexicon, Emotion e) {
  auto mean = lexicon.MeanIntensity(e);
  if (!mean) {
    throw LexiconError("no intensity entries for " +
                       std::string(EmotionName(e)) +
                       "; pass an explicit -int constant");
  }
  return *mean;
}

RelevanceVector AblateInt(const WordGraph& graph, const Vocabulary& vocab,
                          const IntensityLexicon& lexicon, Emotion e,
                          double lexicon_constant,
                          const ImportanceOptions& options,
                          const PageRankOptions& pagerank) {
  if (!(lexicon_constant > options.floor)) {
    throw std::invalid_argument("-int constant must exceed the floor c");
  }
  ImportanceOptions ablated = options;
  ablated.lexicon_constant = lexicon_constant;
  auto jump = JumpDistribution(e, vocab, lexicon, ablated);
  RelevanceVector r = BiasedPageRank(graph, jump, pagerank);
  r.emotion = e;
  return r;
}

PerEmotion<RelevanceVector> EmotionRelevances(
    const WordGraph& graph, const Vocabulary& vocab,
    const IntensityLexicon& lexicon, const ImportanceOptions& options,
    const PageRankOptions& pagerank, std::span<const bool> removed) {
  std::vector<std::future<RelevanceVector>> futures;
  for (Emotion e : kAllEmotions) {
    futures.push_back(std::async(std::launch::async, [&, e] {
      auto jump = JumpDistribution(e, vocab, lexicon, options, removed);
      RelevanceVector r = BiasedPageRank(graph, jump, pagerank);
      r.emotion = e;
      return r;
    }));
  }
  PerEmotion<RelevanceVector> out;
  for (Emotion e : kAllEmotions) {
    out[e] = futures[static_cast<std::size_t>(e)].get();
  }
  return out;
}

}  // namespace eap
