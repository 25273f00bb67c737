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

#ifndef EAP_BASELINES_H_
#define EAP_BASELINES_H_

#include <cstddef>
#include <span>
#include <vector>

#include "eap/corpus.h"
#include "eap/emotion.h"
#include "eap/lexicons.h"
#include "eap/textpipe.h"

namespace eap {

// First min(k, n) scored sentence indices. Same selection for every emotion.
Reference LeadK(const Post& post, std::size_t k);

// Word-level TextRank sentence scores: mean uniform-PageRank relevance of
// each sentence's in-vocabulary stems.
std::vector<double> TextRankScores(
    std::span<const std::vector<WordId>> sentence_ids,
    std::span<const double> uniform_relevance);

// A sentence belongs to summary(e) iff one of its kept stems is associated
// with e.
PerEmotion<Reference> EmoLexBaseline(const AnalyzedPost& post,
                                     const EmoLex& lexicon);

// Mean intensity over each sentence's lexicon-matched stems, 0 when nothing
// matches. Indexed [emotion][sentence].
PerEmotion<std::vector<double>> EmoIntensityScores(
    const AnalyzedPost& post, const IntensityLexicon& lexicon);

// Sentences whose mean matched intensity exceeds t.
PerEmotion<Reference> EmoIntensityBaseline(const AnalyzedPost& post,
                                           const IntensityLexicon& lexicon,
                                           double t);

}  // namespace eap

#endif  // EAP_BASELINES_H_
