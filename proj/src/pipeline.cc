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

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <memory>
#include <numeric>
#include <ostream>
#include <sstream>

#include "eap/baselines.h"
#include "json.hpp"

namespace eap {
namespace {

using ojson = nlohmann::ordered_json;

template <typename Fn>
auto InStage(const std::string& stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

std::string ShortestDouble(double v) {
  std::array<char, 64> buf;
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::ofstream OpenOut(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

PageRankOptions PageRankFor(const RunConfig& c) {
  PageRankOptions o;
  o.damping = c.damping;
  o.tolerance = c.tolerance;
  o.max_iterations = c.max_iterations;
  return o;
}

ImportanceOptions ImportanceFor(const Workspace& ws) {
  ImportanceOptions o;
  o.floor = ws.config.jump_floor;
  if (ws.config.emolex_fallback && ws.emolex) o.emolex_fallback = &*ws.emolex;
  return o;
}

bool DropsIntensity(SystemKind kind) {
  return kind == SystemKind::kEapNoInt || kind == SystemKind::kEapNoIntNoSim;
}

double IntConstant(const Workspace& ws, Emotion e) {
  return ws.config.int_constant ? *ws.config.int_constant
                                : DefaultAblationConstant(*ws.intensity, e);
}

PerEmotion<RelevanceVector> RelevancesFor(const Workspace& ws, SystemKind kind,
                                          std::span<const bool> removed,
                                          const PerEmotion<std::vector<bool>>*
                                              per_emotion_removed) {
  const PageRankOptions pagerank = PageRankFor(ws.config);
  const ImportanceOptions base = ImportanceFor(ws);
  PerEmotion<RelevanceVector> out;
  if (!per_emotion_removed && !DropsIntensity(kind)) {
    return EmotionRelevances(ws.graph, ws.vocab, *ws.intensity, base, pagerank,
                             removed);
  }
  for (Emotion e : kAllEmotions) {
    ImportanceOptions opts = base;
    if (DropsIntensity(kind)) {
      double constant = IntConstant(ws, e);
      if (!(constant > opts.floor)) {
        throw std::invalid_argument("-int constant must exceed the floor c");
      }
      opts.lexicon_constant = constant;
    }
    if (per_emotion_removed) {
      const std::vector<bool>& bits = (*per_emotion_removed)[e];
      auto mask = std::make_unique<bool[]>(bits.size());
      for (std::size_t i = 0; i < bits.size(); ++i) mask[i] = bits[i];
      std::span<const bool> m(mask.get(), bits.size());
      WordGraph graph = BuildGraph(ws.counts.WithoutWords(m));
      auto jump = JumpDistribution(e, ws.vocab, *ws.intensity, opts, m);
      out[e] = BiasedPageRank(graph, jump, pagerank);
    } else {
      auto jump = JumpDistribution(e, ws.vocab, *ws.intensity, opts);
      out[e] = BiasedPageRank(ws.graph, jump, pagerank);
    }
    out[e].emotion = e;
  }
  return out;
}

ojson PathOrNull(const std::optional<std::filesystem::path>& p) {
  return p ? ojson(p->string()) : ojson(nullptr);
}

std::optional<std::filesystem::path> PathFrom(const nlohmann::json& j,
                                              const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return std::filesystem::path(j[key].get<std::string>());
}

ojson ThresholdsJson(const PerEmotion<double>& t) {
  ojson j;
  for (Emotion e : kAllEmotions) j[std::string(EmotionName(e))] = t[e];
  return j;
}

ojson InputsJson(const RunConfig& c) {
  ojson inputs = ojson::array();
  auto add = [&](const std::string& role,
                 const std::optional<std::filesystem::path>& path) {
    if (!path) return;
    inputs.push_back({{"role", role},
                      {"path", path->string()},
                      {"sha256", Sha256File(*path)}});
  };
  for (const CorpusInput& in : c.corpora) {
    add("corpus:" + std::string(SplitName(in.split)), in.path);
  }
  add("intensity_lexicon", c.intensity_lexicon);
  add("emolex", c.emolex);
  add("embeddings", c.embeddings);
  add("threshold_file", c.threshold_file);
  return inputs;
}

}  // namespace

std::string_view MeaningPoolName(MeaningPool pool) {
  return pool == MeaningPool::kAll ? "all" : "train";
}

MeaningPool ParseMeaningPool(std::string_view name) {
  if (name == "all") return MeaningPool::kAll;
  if (name == "train") return MeaningPool::kTrain;
  throw std::invalid_argument("unknown meaning pool '" + std::string(name) +
                              "'");
}

namespace {

constexpr std::pair<SystemKind, std::string_view> kSystemNames[] = {
    {SystemKind::kEap, "eap"},
    {SystemKind::kEapNoInt, "eap-int"},
    {SystemKind::kEapNoSim, "eap-sim"},
    {SystemKind::kEapNoIntNoSim, "eap-int-sim"},
    {SystemKind::kLead1, "lead1"},
    {SystemKind::kLead3, "lead3"},
    {SystemKind::kTextRank, "textrank"},
    {SystemKind::kEmoLex, "emolex"},
    {SystemKind::kEmoIntensity, "emointensity"},
};

}  // namespace

std::string_view SystemName(SystemKind kind) {
  for (const auto& [k, name] : kSystemNames) {
    if (k == kind) return name;
  }
  return "eap";
}

SystemKind ParseSystem(std::string_view name) {
  for (const auto& [k, n] : kSystemNames) {
    if (n == name) return k;
  }
  throw std::invalid_argument("unknown system '" + std::string(name) + "'");
}

bool UsesIntensityLexicon(SystemKind kind) {
  switch (kind) {
    case SystemKind::kEap:
    case SystemKind::kEapNoInt:
    case SystemKind::kEapNoSim:
    case SystemKind::kEapNoIntNoSim:
    case SystemKind::kEmoIntensity:
      return true;
    default:
      return false;
  }
}

bool UsesEmbeddings(SystemKind kind) {
  return kind == SystemKind::kEap || kind == SystemKind::kEapNoInt;
}

bool IsThresholded(SystemKind kind) {
  return kind != SystemKind::kLead1 && kind != SystemKind::kLead3 &&
         kind != SystemKind::kEmoLex;
}

std::vector<double> RunConfig::DefaultThresholdGrid() {
  std::vector<double> grid;
  for (int i = 20; i <= 70; i += 5) grid.push_back(i / 100.0);
  return grid;
}

std::string ConfigJson(const RunConfig& c) {
  ojson j;
  ojson corpora = ojson::array();
  for (const CorpusInput& in : c.corpora) {
    corpora.push_back({{"path", in.path.string()},
                       {"split", std::string(SplitName(in.split))}});
  }
  j["corpora"] = corpora;
  j["intensity_lexicon"] = PathOrNull(c.intensity_lexicon);
  j["emolex"] = PathOrNull(c.emolex);
  j["embeddings"] = PathOrNull(c.embeddings);
  j["threshold_file"] = PathOrNull(c.threshold_file);
  j["token_cap"] = c.token_cap;
  j["min_freq"] = c.min_freq;
  j["window"] = c.window;
  j["window_space"] = std::string(WindowSpaceName(c.window_space));
  j["damping"] = c.damping;
  j["tolerance"] = c.tolerance;
  j["max_iterations"] = c.max_iterations;
  j["jump_floor"] = c.jump_floor;
  j["int_constant"] = c.int_constant ? ojson(*c.int_constant) : ojson(nullptr);
  j["emolex_fallback"] = c.emolex_fallback;
  j["meaning_pool"] = std::string(MeaningPoolName(c.meaning_pool));
  j["score_scale"] = std::string(ScoreScaleName(c.score_scale));
  j["gold_merge"] = std::string(GoldMergeName(c.gold_merge));
  j["threshold_grid"] = c.threshold_grid;
  j["default_threshold"] = c.default_threshold;
  j["fixed_threshold"] =
      c.fixed_threshold ? ojson(*c.fixed_threshold) : ojson(nullptr);
  j["bootstrap_resamples"] = c.bootstrap_resamples;
  j["bootstrap_sample_size"] = c.bootstrap_sample_size;
  j["seed"] = c.seed;
  return j.dump(2);
}

RunConfig ConfigFromJson(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.contains("config")) j = j["config"];
  RunConfig c;
  for (const auto& in : j.at("corpora")) {
    c.corpora.push_back({in.at("path").get<std::string>(),
                         ParseSplit(in.at("split").get<std::string>())});
  }
  c.intensity_lexicon = PathFrom(j, "intensity_lexicon");
  c.emolex = PathFrom(j, "emolex");
  c.embeddings = PathFrom(j, "embeddings");
  c.threshold_file = PathFrom(j, "threshold_file");
  c.token_cap = j.value("token_cap", c.token_cap);
  c.min_freq = j.value("min_freq", c.min_freq);
  c.window = j.value("window", c.window);
  if (j.contains("window_space")) {
    c.window_space = ParseWindowSpace(j["window_space"].get<std::string>());
  }
  c.damping = j.value("damping", c.damping);
  c.tolerance = j.value("tolerance", c.tolerance);
  c.max_iterations = j.value("max_iterations", c.max_iterations);
  c.jump_floor = j.value("jump_floor", c.jump_floor);
  if (j.contains("int_constant") && !j["int_constant"].is_null()) {
    c.int_constant = j["int_constant"].get<double>();
  }
  c.emolex_fallback = j.value("emolex_fallback", c.emolex_fallback);
  if (j.contains("meaning_pool")) {
    c.meaning_pool = ParseMeaningPool(j["meaning_pool"].get<std::string>());
  }
  if (j.contains("score_scale")) {
    c.score_scale = ParseScoreScale(j["score_scale"].get<std::string>());
  }
  if (j.contains("gold_merge")) {
    c.gold_merge = ParseGoldMerge(j["gold_merge"].get<std::string>());
  }
  c.threshold_grid = j.value("threshold_grid", c.threshold_grid);
  c.default_threshold = j.value("default_threshold", c.default_threshold);
  if (j.contains("fixed_threshold") && !j["fixed_threshold"].is_null()) {
    c.fixed_threshold = j["fixed_threshold"].get<double>();
  }
  c.bootstrap_resamples = j.value("bootstrap_resamples", c.bootstrap_resamples);
  c.bootstrap_sample_size =
      j.value("bootstrap_sample_size", c.bootstrap_sample_size);
  c.seed = j.value("seed", c.seed);
  return c;
}

std::string Sha256Hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string Sha256File(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return Sha256Hex(buf.str());
}

std::optional<std::size_t> Workspace::IndexOf(Split split) const {
  for (std::size_t i = 0; i < corpora.size(); ++i) {
    if (corpora[i].split == split) return i;
  }
  return std::nullopt;
}

std::size_t Workspace::EvaluationIndex() const {
  for (Split s : {Split::kTest, Split::kValidation, Split::kTrain}) {
    if (auto i = IndexOf(s)) return *i;
  }
  throw StageError("corpus", "no corpus loaded");
}

Workspace BuildWorkspace(const RunConfig& config, const WorkspaceNeeds& needs) {
  Workspace ws;
  ws.config = config;
  InStage("corpus", [&] {
    if (config.corpora.empty()) {
      throw std::invalid_argument("no --corpus given");
    }
    for (const CorpusInput& in : config.corpora) {
      if (ws.IndexOf(in.split)) {
        throw std::invalid_argument("split " + std::string(SplitName(in.split)) +
                                    " given twice");
      }
      ws.corpora.push_back(LoadCorpus(in.path, in.split, config.token_cap));
    }
  });
  InStage("textpipe", [&] {
    for (const Corpus& c : ws.corpora) ws.analyzed.push_back(AnalyzeCorpus(c));
  });
  const auto train = ws.IndexOf(Split::kTrain);
  InStage("vocab", [&] {
    if (!train) throw std::invalid_argument("a train split is required");
    ws.vocab = BuildVocabulary(ws.analyzed[*train], config.min_freq);
  });
  InStage("graph", [&] {
    ws.counts = CountCooccurrences(ws.analyzed[*train], ws.vocab, config.window,
                                   config.window_space);
    ws.graph = BuildGraph(ws.counts);
    for (const auto& posts : ws.analyzed) {
      auto& per_corpus = ws.ids.emplace_back();
      for (const AnalyzedPost& post : posts) {
        per_corpus.push_back(ws.vocab.SentenceIds(post));
      }
    }
  });
  InStage("lexicons", [&] {
    if (needs.intensity) {
      if (!config.intensity_lexicon) {
        throw std::invalid_argument("--intensity-lex is required");
      }
      ws.intensity = LoadIntensityLexicon(*config.intensity_lexicon);
    }
    if (needs.emolex || (needs.intensity && config.emolex_fallback)) {
      if (!config.emolex) throw std::invalid_argument("--emolex is required");
      ws.emolex = LoadEmoLex(*config.emolex);
    }
  });
  InStage("embeddings", [&] {
    if (!needs.embeddings) return;
    if (!config.embeddings) throw std::invalid_argument("--embeddings is required");
    ws.embeddings = LoadEmbeddings(*config.embeddings);
    for (const Corpus& c : ws.corpora) ws.embeddings->CheckCovers(c);
  });
  return ws;
}

SystemScores ScoreFromRelevances(const Workspace& ws, SystemKind kind,
                                 PerEmotion<RelevanceVector> relevances,
                                 const ScoreScaler* frozen_scaler) {
  SystemScores out;
  out.kind = kind;
  const bool use_meaning = UsesEmbeddings(kind);

  // Flat list of every scored sentence; meaning scores come back in the
  // same order.
  std::vector<std::size_t> query_rows;
  std::vector<std::size_t> pool_rows;
  PerEmotion<std::vector<double>> pool_relevance;
  std::vector<PerEmotion<double>> meaning;
  if (use_meaning) {
    InStage("embeddings", [&] {
      if (!ws.embeddings) throw std::invalid_argument("no embeddings loaded");
      const auto train = ws.IndexOf(Split::kTrain);
      for (std::size_t c = 0; c < ws.corpora.size(); ++c) {
        const bool in_pool =
            ws.config.meaning_pool == MeaningPool::kAll || c == train;
        for (std::size_t p = 0; p < ws.corpora[c].posts.size(); ++p) {
          const std::string& id = ws.corpora[c].posts[p].post_id;
          for (std::size_t s = 0; s < ws.ids[c][p].size(); ++s) {
            auto row = ws.embeddings->RowOf({id, static_cast<std::uint32_t>(s)});
            if (!row) {
              throw EmbeddingError("missing embedding for (" + id + ", " +
                                   std::to_string(s) + ")");
            }
            query_rows.push_back(*row);
            if (!in_pool) continue;
            pool_rows.push_back(*row);
            for (Emotion e : kAllEmotions) {
              pool_relevance[e].push_back(
                  SentenceRelevance(ws.ids[c][p][s], relevances[e].scores));
            }
          }
        }
      }
    });
    meaning = InStage("ranker", [&] {
      return MeaningScores(*ws.embeddings, query_rows, pool_rows,
                           pool_relevance);
    });
  }

  std::size_t cursor = 0;
  PerEmotion<std::vector<double>> reference;
  out.detail.resize(ws.corpora.size());
  for (std::size_t c = 0; c < ws.corpora.size(); ++c) {
    for (std::size_t p = 0; p < ws.corpora[c].posts.size(); ++p) {
      const auto& ids = ws.ids[c][p];
      std::optional<std::vector<PerEmotion<double>>> m;
      if (use_meaning) {
        m.emplace(meaning.begin() + cursor, meaning.begin() + cursor + ids.size());
        cursor += ids.size();
      }
      PostScores ps = ComputePostScores(ws.corpora[c].posts[p].post_id, ids,
                                        relevances, m);
      for (Emotion e : kAllEmotions) {
        const auto& f = ps.emotions[e].final;
        reference[e].insert(reference[e].end(), f.begin(), f.end());
      }
      out.detail[c].push_back(std::move(ps));
    }
  }
  out.scaler = frozen_scaler ? *frozen_scaler
                             : ScoreScaler::Fit(ws.config.score_scale, reference);
  out.scaled.resize(ws.corpora.size());
  for (std::size_t c = 0; c < ws.corpora.size(); ++c) {
    for (const PostScores& ps : out.detail[c]) {
      auto& scaled = out.scaled[c].emplace_back();
      for (Emotion e : kAllEmotions) {
        for (double f : ps.emotions[e].final) {
          scaled[e].push_back(out.scaler.Apply(e, f));
        }
      }
    }
  }
  out.relevances = std::move(relevances);
  return out;
}

SystemScores ScoreSystem(const Workspace& ws, SystemKind kind) {
  switch (kind) {
    case SystemKind::kEap:
    case SystemKind::kEapNoInt:
    case SystemKind::kEapNoSim:
    case SystemKind::kEapNoIntNoSim: {
      auto relevances = InStage("ranker", [&] {
        if (!ws.intensity) throw std::invalid_argument("no intensity lexicon");
        return RelevancesFor(ws, kind, {}, nullptr);
      });
      return ScoreFromRelevances(ws, kind, std::move(relevances), nullptr);
    }
    case SystemKind::kTextRank:
      return InStage("baseline", [&] {
        SystemScores out;
        out.kind = kind;
        out.shared_threshold = true;
        RelevanceVector uniform =
            UniformPageRank(ws.graph, PageRankFor(ws.config));
        std::vector<std::vector<std::vector<double>>> raw(ws.corpora.size());
        std::vector<double> all;
        for (std::size_t c = 0; c < ws.corpora.size(); ++c) {
          for (const auto& ids : ws.ids[c]) {
            raw[c].push_back(TextRankScores(ids, uniform.scores));
            all.insert(all.end(), raw[c].back().begin(), raw[c].back().end());
          }
        }
        out.scaler = ScoreScaler::Fit(ws.config.score_scale,
                                      PerEmotion<std::vector<double>>(all));
        out.scaled.resize(ws.corpora.size());
        for (std::size_t c = 0; c < ws.corpora.size(); ++c) {
          for (const auto& scores : raw[c]) {
            auto& scaled = out.scaled[c].emplace_back();
            for (Emotion e : kAllEmotions) {
              for (double s : scores) scaled[e].push_back(out.scaler.Apply(e, s));
            }
          }
        }
        return out;
      });
    case SystemKind::kEmoIntensity:
      return InStage("baseline", [&] {
        if (!ws.intensity) throw std::invalid_argument("no intensity lexicon");
        SystemScores out;
        out.kind = kind;
        out.scaled.resize(ws.corpora.size());
        for (std::size_t c = 0; c < ws.corpora.size(); ++c) {
          for (const AnalyzedPost& post : ws.analyzed[c]) {
            out.scaled[c].push_back(EmoIntensityScores(post, *ws.intensity));
          }
        }
        return out;
      });
    case SystemKind::kLead1:
    case SystemKind::kLead3:
    case SystemKind::kEmoLex:
      return InStage("baseline", [&] {
        SystemScores out;
        out.kind = kind;
        out.thresholded = false;
        out.fixed.resize(ws.corpora.size());
        for (std::size_t c = 0; c < ws.corpora.size(); ++c) {
          for (std::size_t p = 0; p < ws.corpora[c].posts.size(); ++p) {
            if (kind == SystemKind::kEmoLex) {
              if (!ws.emolex) throw std::invalid_argument("no EmoLex loaded");
              out.fixed[c].push_back(EmoLexBaseline(ws.analyzed[c][p], *ws.emolex));
            } else {
              Reference lead = LeadK(ws.corpora[c].posts[p],
                                     kind == SystemKind::kLead1 ? 1 : 3);
              out.fixed[c].emplace_back(lead);
            }
          }
        }
        return out;
      });
  }
  throw StageError("cli", "unhandled system");
}

std::vector<PerEmotion<Reference>> Select(const SystemScores& scores,
                                          std::size_t corpus,
                                          const PerEmotion<double>& thresholds) {
  if (!scores.thresholded) return scores.fixed.at(corpus);
  std::vector<PerEmotion<Reference>> out;
  out.reserve(scores.scaled.at(corpus).size());
  for (const auto& post : scores.scaled[corpus]) {
    auto& sel = out.emplace_back();
    for (Emotion e : kAllEmotions) sel[e] = SelectAbove(post[e], thresholds[e]);
  }
  return out;
}

PerEmotion<double> TuneThresholds(const Workspace& ws,
                                  const SystemScores& scores,
                                  std::size_t corpus,
                                  std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("empty threshold grid");
  if (!scores.thresholded) {
    throw std::invalid_argument("system has no threshold to tune");
  }
  std::vector<double> sorted(grid.begin(), grid.end());
  std::sort(sorted.begin(), sorted.end());
  const auto& posts = ws.corpora.at(corpus).posts;

  PerEmotion<double> best_t(sorted.front());
  PerEmotion<double> best_score(-1.0);
  double best_shared = -1.0;
  for (double t : sorted) {
    auto predictions = Select(scores, corpus, PerEmotion<double>(t));
    EvalReport r = Evaluate(posts, predictions, ws.config.gold_merge);
    if (scores.shared_threshold) {
      double sum = 0.0;
      for (const InstanceScore& s : r.instances) sum += s.rouge_l;
      double mean = r.instances.empty() ? 0.0 : sum / r.instances.size();
      if (mean > best_shared) {
        best_shared = mean;
        best_t = PerEmotion<double>(t);
      }
      continue;
    }
    for (Emotion e : kAllEmotions) {
      if (r.per_emotion[e].rouge_l > best_score[e]) {
        best_score[e] = r.per_emotion[e].rouge_l;
        best_t[e] = t;
      }
    }
  }
  return best_t;
}

PerEmotion<double> ReadThresholds(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open threshold file " + path.string());
  PerEmotion<std::optional<double>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw std::runtime_error("threshold file line " + std::to_string(line_no) +
                               ": expected emotion<TAB>t");
    }
    Emotion e = ParseEmotionOrThrow(line.substr(0, tab));
    seen[e] = std::stod(line.substr(tab + 1));
  }
  PerEmotion<double> out(0.0);
  for (Emotion e : kAllEmotions) {
    if (!seen[e]) {
      throw std::runtime_error("threshold file has no entry for " +
                               std::string(EmotionName(e)));
    }
    out[e] = *seen[e];
  }
  return out;
}

void WriteThresholds(const PerEmotion<double>& thresholds, std::ostream& out) {
  for (Emotion e : kAllEmotions) {
    out << EmotionName(e) << '\t' << ShortestDouble(thresholds[e]) << '\n';
  }
}

SystemRun RunSystem(const Workspace& ws, SystemKind kind) {
  SystemRun run;
  run.scores = ScoreSystem(ws, kind);
  run.eval_corpus = ws.EvaluationIndex();
  if (run.scores.thresholded) {
    const RunConfig& c = ws.config;
    run.thresholds = InStage("tune", [&] {
      if (c.fixed_threshold) return PerEmotion<double>(*c.fixed_threshold);
      if (c.threshold_file) return ReadThresholds(*c.threshold_file);
      if (auto val = ws.IndexOf(Split::kValidation)) {
        return TuneThresholds(ws, run.scores, *val, c.threshold_grid);
      }
      return PerEmotion<double>(c.default_threshold);
    });
  }
  run.predictions = Select(run.scores, run.eval_corpus, run.thresholds);
  run.report = InStage("evaluate", [&] {
    return Evaluate(ws.corpora[run.eval_corpus].posts, run.predictions,
                    ws.config.gold_merge);
  });
  run.report.system = std::string(SystemName(kind));
  run.report.config_hash = ConfigHash(ws);
  return run;
}

void WriteSummaries(const Workspace& ws, const SystemRun& run,
                    std::ostream& out) {
  const std::size_t c = run.eval_corpus;
  const auto& posts = ws.corpora[c].posts;
  for (std::size_t p = 0; p < posts.size(); ++p) {
    for (Emotion e : kAllEmotions) {
      ojson rec;
      rec["post_id"] = posts[p].post_id;
      rec["emotion"] = std::string(EmotionName(e));
      rec["selected"] = run.predictions[p][e];
      if (run.scores.thresholded) {
        rec["threshold"] = run.thresholds[e];
        ojson scores;
        if (!run.scores.detail.empty()) {
          const EmotionScores& s = run.scores.detail[c][p].emotions[e];
          scores["relevance"] = s.relevance;
          scores["meaning"] = s.meaning;
          scores["final"] = s.final;
        }
        scores["scaled"] = run.scores.scaled[c][p][e];
        rec["scores"] = std::move(scores);
      }
      out << rec.dump() << '\n';
    }
  }
}

std::vector<WordId> TopTerms(std::span<const double> scores, std::size_t k) {
  std::vector<WordId> idx(scores.size());
  std::iota(idx.begin(), idx.end(), WordId{0});
  k = std::min(k, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + k, idx.end(),
                    [&](WordId a, WordId b) {
                      if (scores[a] != scores[b]) return scores[a] > scores[b];
                      return a < b;
                    });
  idx.resize(k);
  return idx;
}

std::vector<DropTermsPoint> DropTopTerms(const Workspace& ws,
                                         const SystemRun& full,
                                         std::span<const std::size_t> ks) {
  if (!full.scores.relevances) {
    throw StageError("ablate", "drop-terms needs an EAP run");
  }
  const SystemKind kind = full.scores.kind;
  std::vector<DropTermsPoint> out;
  for (std::size_t k : ks) {
    if (k > ws.vocab.size()) {
      throw StageError("ablate", "k exceeds vocabulary size");
    }
    PerEmotion<std::vector<bool>> removed;
    for (Emotion e : kAllEmotions) {
      removed[e].assign(ws.vocab.size(), false);
      for (WordId w : TopTerms((*full.scores.relevances)[e].scores, k)) {
        removed[e][w] = true;
      }
    }
    auto relevances = InStage("ranker", [&] {
      return RelevancesFor(ws, kind, {}, &removed);
    });
    SystemScores scores =
        ScoreFromRelevances(ws, kind, std::move(relevances), &full.scores.scaler);
    auto predictions = Select(scores, full.eval_corpus, full.thresholds);
    EvalReport r = Evaluate(ws.corpora[full.eval_corpus].posts, predictions,
                            ws.config.gold_merge);
    DropTermsPoint point;
    point.k = k;
    for (Emotion e : kAllEmotions) {
      point.detection_f1[e] = r.per_emotion[e].detection_f1;
    }
    point.average_f1 = r.average.detection_f1;
    out.push_back(point);
  }
  return out;
}

std::string ConfigHash(const Workspace& ws) {
  ojson j;
  j["config"] = ojson::parse(ConfigJson(ws.config));
  j["inputs"] = InputsJson(ws.config);
  return Sha256Hex(j.dump());
}

std::string ManifestJson(const Workspace& ws, std::string_view command,
                         const std::optional<SystemRun>& run) {
  ojson j;
  j["command"] = std::string(command);
  j["config"] = ojson::parse(ConfigJson(ws.config));
  j["inputs"] = InputsJson(ws.config);
  j["config_hash"] = ConfigHash(ws);
  j["choices"] = {
      {"transition", "edge weights row-normalized by weighted degree"},
      {"dangling", "mass redistributed through the jump distribution"},
      {"negative_cosine", "clamped to 0"},
      {"threshold_rule", "strictly greater than t"},
      {"rouge_multi_reference", "max over references"},
  };
  j["vocab_size"] = ws.vocab.size();
  j["graph_edges"] = ws.graph.num_edges();
  if (run) {
    j["system"] = std::string(SystemName(run->scores.kind));
    j["evaluation_split"] =
        std::string(SplitName(ws.corpora[run->eval_corpus].split));
    if (run->scores.thresholded) j["thresholds"] = ThresholdsJson(run->thresholds);
    if (run->scores.relevances) {
      ojson pr;
      for (Emotion e : kAllEmotions) {
        const RelevanceVector& r = (*run->scores.relevances)[e];
        pr[std::string(EmotionName(e))] = {{"iterations", r.iterations},
                                           {"residual", r.residual},
                                           {"converged", r.converged}};
      }
      j["pagerank"] = pr;
    }
  }
  return j.dump(2) + "\n";
}

SystemRun WriteSystemRun(const Workspace& ws, SystemKind kind,
                         const std::filesystem::path& out_dir) {
  SystemRun run = RunSystem(ws, kind);
  InStage("output", [&] {
    std::filesystem::create_directories(out_dir);
    {
      auto out = OpenOut(out_dir / "vocab.tsv");
      WriteVocabulary(ws.vocab, out);
    }
    {
      auto out = OpenOut(out_dir / "graph.tsv");
      WriteGraph(ws.graph, ws.vocab, out);
    }
    {
      auto out = OpenOut(out_dir / "truncation.tsv");
      out << "split\tpost_id\tkept_sentences\ttotal_sentences\tkept_tokens"
             "\ttotal_tokens\n";
      for (const Corpus& c : ws.corpora) {
        for (const TruncationRecord& t : c.truncated) {
          out << SplitName(c.split) << '\t' << t.post_id << '\t'
              << t.kept_sentences << '\t' << t.total_sentences << '\t'
              << t.kept_tokens << '\t' << t.total_tokens << '\n';
        }
      }
    }
    if (run.scores.thresholded) {
      auto out = OpenOut(out_dir / "thresholds.tsv");
      WriteThresholds(run.thresholds, out);
    }
    {
      auto out = OpenOut(out_dir / "summaries.jsonl");
      WriteSummaries(ws, run, out);
    }
    {
      auto out = OpenOut(out_dir / "report.json");
      out << ReportJson(run.report);
    }
    {
      auto out = OpenOut(out_dir / "report.tsv");
      WriteReportTable(std::span(&run.report, 1), out);
    }
    {
      auto out = OpenOut(out_dir / "manifest.json");
      out << ManifestJson(ws, SystemName(kind), run);
    }
  });
  return run;
}

std::vector<PerEmotion<Reference>> ReadSummaries(
    const std::filesystem::path& path, std::span<const Post> posts) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open summaries " + path.string());
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < posts.size(); ++i) index[posts[i].post_id] = i;
  std::vector<PerEmotion<Reference>> out(posts.size());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      auto rec = nlohmann::json::parse(line);
      auto it = index.find(rec.at("post_id").get<std::string>());
      if (it == index.end()) {
        throw std::runtime_error("post " + rec["post_id"].get<std::string>() +
                                 " is not in the gold corpus");
      }
      Emotion e = ParseEmotionOrThrow(rec.at("emotion").get<std::string>());
      out[it->second][e] = rec.at("selected").get<Reference>();
    } catch (const std::exception& e) {
      throw std::runtime_error(path.string() + " line " +
                               std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace eap
