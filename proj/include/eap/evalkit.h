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

#ifndef EAP_EVALKIT_H_
#define EAP_EVALKIT_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eap/corpus.h"
#include "eap/emotion.h"

namespace eap {

// Lowercased maximal runs of ASCII alphanumerics. Everything else splits.
std::vector<std::string> RougeTokenize(std::string_view text);

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Clipped n-gram overlap. Zero when either side has no n-grams.
Prf RougeN(std::span<const std::string> candidate,
           std::span<const std::string> reference, std::size_t n);
// LCS-based. Zero when either side is empty.
Prf RougeL(std::span<const std::string> candidate,
           std::span<const std::string> reference);

// Multi-reference forms: the reference with the best F1 wins (first on ties).
Prf RougeN(std::span<const std::string> candidate,
           std::span<const std::vector<std::string>> references,
           std::size_t n);
Prf RougeL(std::span<const std::string> candidate,
           std::span<const std::vector<std::string>> references);

// 2TP / (2TP + FP + FN); 1 when there is nothing to find and nothing found.
double F1FromCounts(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn);

struct BinaryCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  double F1() const { return F1FromCounts(tp, fp, fn); }
  BinaryCounts& operator+=(const BinaryCounts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
};

// How the annotators' references become one positive set for summary F1.
enum class GoldMerge {
  kUnion,  // sentences picked by any annotator
  kMax,    // per post, the single reference that scores best
};

std::string_view GoldMergeName(GoldMerge merge);
GoldMerge ParseGoldMerge(std::string_view name);

// Sentence-level counts for one post and emotion.
BinaryCounts SentenceCounts(const Reference& predicted,
                            std::span<const Reference> references,
                            GoldMerge merge);

struct EmotionMetrics {
  double rouge2 = 0.0;
  double rouge_l = 0.0;
  double summary_f1 = 0.0;
  double detection_f1 = 0.0;
  std::size_t instances = 0;  // posts with gold for this emotion
};

// ROUGE for one (post, emotion) pair that has gold references.
struct InstanceScore {
  std::string post_id;
  Emotion emotion = Emotion::kAnger;
  double rouge2 = 0.0;
  double rouge_l = 0.0;
};

struct Significance {
  std::string against;
  double rouge2_p = 1.0;
  double rouge_l_p = 1.0;
};

struct EvalReport {
  std::string system;
  std::string config_hash;
  PerEmotion<EmotionMetrics> per_emotion;
  EmotionMetrics average;  // unweighted mean of the seven rows
  std::vector<InstanceScore> instances;
  std::optional<Significance> significance;
};

// predictions[i] holds the selected sentences of posts[i] per emotion.
// ROUGE averages over (post, emotion) pairs with gold; an empty prediction
// there scores 0. Summary F1 is micro within an emotion, detection F1 is
// binary per emotion at post level.
EvalReport Evaluate(std::span<const Post> posts,
                    std::span<const PerEmotion<Reference>> predictions,
                    GoldMerge merge = GoldMerge::kUnion);

struct BootstrapOptions {
  int resamples = 50;
  std::size_t sample_size = 500;
  std::uint64_t seed = 0;
};

// Paired bootstrap: fraction of resamples where mean(b) >= mean(a).
double BootstrapPValue(std::span<const double> a, std::span<const double> b,
                       const BootstrapOptions& options);

// Pairs the instances of both reports by (post_id, emotion) and tests
// whether `system` beats `baseline`.
Significance CompareReports(const EvalReport& system,
                            const EvalReport& baseline,
                            const BootstrapOptions& options);

// Metrics, significance and the per-instance scores.
std::string ReportJson(const EvalReport& report);
EvalReport ReportFromJson(std::string_view json);

// One row per report; columns are emotion x {R2, RL, SF1, DF1} then the
// averages, then p-values when present.
void WriteReportTable(std::span<const EvalReport> reports, std::ostream& out);

}  // namespace eap

#endif  // EAP_EVALKIT_H_
