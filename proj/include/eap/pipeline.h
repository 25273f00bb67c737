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

#ifndef EAP_PIPELINE_H_
#define EAP_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eap/corpus.h"
#include "eap/embeddings.h"
#include "eap/emotion.h"
#include "eap/evalkit.h"
#include "eap/lexicons.h"
#include "eap/ranker.h"
#include "eap/textpipe.h"
#include "eap/wordgraph.h"

namespace eap {

// Error raised by a pipeline stage; what() reads "<stage>: <message>".
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& message)
      : std::runtime_error(stage + ": " + message), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

enum class MeaningPool { kAll, kTrain };
std::string_view MeaningPoolName(MeaningPool pool);
MeaningPool ParseMeaningPool(std::string_view name);

enum class SystemKind {
  kEap,
  kEapNoInt,        // -int: constant lexicon importance
  kEapNoSim,        // -sim: relevance only
  kEapNoIntNoSim,   // both removed
  kLead1,
  kLead3,
  kTextRank,
  kEmoLex,
  kEmoIntensity,
};
std::string_view SystemName(SystemKind kind);
SystemKind ParseSystem(std::string_view name);
bool UsesIntensityLexicon(SystemKind kind);
bool UsesEmbeddings(SystemKind kind);
bool IsThresholded(SystemKind kind);

struct CorpusInput {
  std::filesystem::path path;
  Split split = Split::kTrain;
};

struct RunConfig {
  std::vector<CorpusInput> corpora;
  std::optional<std::filesystem::path> intensity_lexicon;
  std::optional<std::filesystem::path> emolex;
  std::optional<std::filesystem::path> embeddings;
  std::optional<std::filesystem::path> threshold_file;

  std::size_t token_cap = kDefaultTokenCap;
  std::size_t min_freq = 20;
  std::size_t window = kDefaultWindow;
  WindowSpace window_space = WindowSpace::kFiltered;
  double damping = 0.85;
  double tolerance = 1e-8;
  int max_iterations = 100;
  double jump_floor = 0.1;
  std::optional<double> int_constant;  // -int; default is the lexicon mean
  bool emolex_fallback = false;
  MeaningPool meaning_pool = MeaningPool::kAll;
  ScoreScale score_scale = ScoreScale::kQuantile;
  GoldMerge gold_merge = GoldMerge::kUnion;
  std::vector<double> threshold_grid = DefaultThresholdGrid();
  double default_threshold = 0.35;
  std::optional<double> fixed_threshold;  // same t for every emotion
  int bootstrap_resamples = 50;
  std::size_t bootstrap_sample_size = 500;
  std::uint64_t seed = 0;

  static std::vector<double> DefaultThresholdGrid();
};

std::string ConfigJson(const RunConfig& config);
RunConfig ConfigFromJson(std::string_view json);

// SHA-256 of a file, lowercase hex.
std::string Sha256File(const std::filesystem::path& path);
std::string Sha256Hex(std::string_view data);

// Everything the systems share: parsed corpora, analyzed text, the
// vocabulary and graph built from the training split, and whichever
// lexicons and embeddings the config names.
struct Workspace {
  RunConfig config;
  std::vector<Corpus> corpora;
  std::vector<std::vector<AnalyzedPost>> analyzed;
  // [corpus][post][sentence] -> vocabulary ids of kept stems
  std::vector<std::vector<std::vector<std::vector<WordId>>>> ids;
  Vocabulary vocab;
  CooccurrenceMatrix counts;
  WordGraph graph;
  std::optional<IntensityLexicon> intensity;
  std::optional<EmoLex> emolex;
  std::optional<EmbeddingStore> embeddings;

  std::optional<std::size_t> IndexOf(Split split) const;
  // Test if loaded, else validation, else train.
  std::size_t EvaluationIndex() const;
};

struct WorkspaceNeeds {
  bool intensity = false;
  bool emolex = false;
  bool embeddings = false;
};

Workspace BuildWorkspace(const RunConfig& config, const WorkspaceNeeds& needs);

// Per-sentence scores on the threshold scale, for every post of every
// loaded corpus. Fixed-selection systems carry selections instead.
struct SystemScores {
  SystemKind kind = SystemKind::kEap;
  bool thresholded = true;
  bool shared_threshold = false;  // one t for all emotions
  // [corpus][post][emotion][sentence]
  std::vector<std::vector<PerEmotion<std::vector<double>>>> scaled;
  // Raw relevance/meaning/final for EAP variants, [corpus][post].
  std::vector<std::vector<PostScores>> detail;
  // [corpus][post] for fixed-selection systems.
  std::vector<std::vector<PerEmotion<Reference>>> fixed;
  ScoreScaler scaler;
  std::optional<PerEmotion<RelevanceVector>> relevances;
};

SystemScores ScoreSystem(const Workspace& ws, SystemKind kind);

// EAP-style scoring from given per-emotion relevances. A provided scaler
// is reused (frozen); otherwise one is fitted on all scored sentences.
SystemScores ScoreFromRelevances(const Workspace& ws, SystemKind kind,
                                 PerEmotion<RelevanceVector> relevances,
                                 const ScoreScaler* frozen_scaler);

std::vector<PerEmotion<Reference>> Select(const SystemScores& scores,
                                          std::size_t corpus,
                                          const PerEmotion<double>& thresholds);

// Per-emotion argmax of mean Rouge-L on `corpus` over the grid; ties go
// to the smaller t. With shared_threshold the objective pools all
// emotions and one t is returned for all.
PerEmotion<double> TuneThresholds(const Workspace& ws,
                                  const SystemScores& scores,
                                  std::size_t corpus,
                                  std::span<const double> grid);

PerEmotion<double> ReadThresholds(const std::filesystem::path& path);
void WriteThresholds(const PerEmotion<double>& thresholds, std::ostream& out);

struct SystemRun {
  SystemScores scores;
  PerEmotion<double> thresholds{0.0};
  std::size_t eval_corpus = 0;
  std::vector<PerEmotion<Reference>> predictions;  // eval corpus posts
  EvalReport report;
};

// Thresholds come from, in order: fixed_threshold, threshold_file, tuning
// on validation when it is loaded, default_threshold.
SystemRun RunSystem(const Workspace& ws, SystemKind kind);

// Summary records for the evaluation corpus, one JSON line per post and
// emotion.
void WriteSummaries(const Workspace& ws, const SystemRun& run,
                    std::ostream& out);

struct DropTermsPoint {
  std::size_t k = 0;
  PerEmotion<double> detection_f1{0.0};
  double average_f1 = 0.0;
};

// Removes the k most relevant words per emotion (k in `ks`), reruns
// PageRank and scoring with the k=0 scaler and thresholds frozen, and
// reports detection F1 on the evaluation corpus.
std::vector<DropTermsPoint> DropTopTerms(const Workspace& ws,
                                         const SystemRun& full,
                                         std::span<const std::size_t> ks);

// Indices of the k largest scores, ties to the lower index.
std::vector<WordId> TopTerms(std::span<const double> scores, std::size_t k);

// Writes manifest.json, vocab.tsv, graph.tsv, truncation.tsv,
// thresholds.tsv, summaries.jsonl, report.json and report.tsv for one
// system into `out_dir`.
SystemRun WriteSystemRun(const Workspace& ws, SystemKind kind,
                         const std::filesystem::path& out_dir);

std::string ManifestJson(const Workspace& ws, std::string_view command,
                         const std::optional<SystemRun>& run);
std::string ConfigHash(const Workspace& ws);

// Reads summaries.jsonl back into predictions aligned with `posts`.
std::vector<PerEmotion<Reference>> ReadSummaries(
    const std::filesystem::path& path, std::span<const Post> posts);

}  // namespace eap

#endif  // EAP_PIPELINE_H_
