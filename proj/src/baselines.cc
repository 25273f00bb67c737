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

#include "eap/baselines.h"

#include <algorithm>
#include <stdexcept>

#include "eap/ranker.h"

namespace eap {

Reference LeadK(const Post& post, std::size_t k) {
  if (k < 1) throw std::invalid_argument("lead-k needs k >= 1");
  Reference out(std::min(k, post.scored_sentences));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

std::vector<double> TextRankScores(
    std::span<const std::vector<WordId>> sentence_ids,
    std::span<const double> uniform_relevance) {
  std::vector<double> out(sentence_ids.size());
  for (std::size_t i = 0; i < sentence_ids.size(); ++i) {
    out[i] = SentenceRelevance(sentence_ids[i], uniform_relevance);
  }
  return out;
}

PerEmotion<Reference> EmoLexBaseline(const AnalyzedPost& post,
                                     const EmoLex& lexicon) {
  PerEmotion<Reference> out;
  for (std::size_t s = 0; s < post.sentences.size(); ++s) {
    for (Emotion e : kAllEmotions) {
      bool hit = std::any_of(
          post.sentences[s].kept.begin(), post.sentences[s].kept.end(),
          [&](const KeptToken& t) { return lexicon.Associated(t.stem, e); });
      if (hit) out[e].push_back(s);
    }
  }
  return out;
}

PerEmotion<std::vector<double>> EmoIntensityScores(
    const AnalyzedPost& post, const IntensityLexicon& lexicon) {
  PerEmotion<std::vector<double>> out;
  for (Emotion e : kAllEmotions) {
    out[e].reserve(post.sentences.size());
    for (const AnalyzedSentence& sentence : post.sentences) {
      double sum = 0.0;
      std::size_t matched = 0;
      for (const KeptToken& t : sentence.kept) {
        if (auto v = lexicon.Lookup(t.stem, e)) {
          sum += *v;
          ++matched;
        }
      }
      out[e].push_back(matched == 0 ? 0.0
                                    : sum / static_cast<double>(matched));
    }
  }
  return out;
}

PerEmotion<Reference> EmoIntensityBaseline(const AnalyzedPost& post,
                                           const IntensityLexicon& lexicon,
                                           double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("intensity threshold must lie in [0, 1]");
  }
  auto scores = EmoIntensityScores(post, lexicon);
  PerEmotion<Reference> out;
  for (Emotion e : kAllEmotions) out[e] = SelectAbove(scores[e], t);
  return out;
}

}  // namespace eap
