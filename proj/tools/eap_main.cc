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

// Command-line entry point: vocabulary and graph dumps, EAP summaries,
// baselines, ablations, threshold tuning, evaluation and report export.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eap/evalkit.h"
#include "eap/pipeline.h"

namespace {

namespace fs = std::filesystem;
using eap::RunConfig;
using eap::StageError;
using eap::SystemKind;

// Raw flag values; only flags the user actually passed override the config
// loaded from --manifest.
struct Flags {
  std::string manifest;
  std::vector<std::string> corpus_paths;
  std::vector<std::string> splits;
  std::string intensity_lex, emolex, embeddings, threshold_file;
  std::size_t min_freq = 20, window = eap::kDefaultWindow, token_cap = 512;
  std::string window_space = "filtered", meaning_pool = "all",
              score_scale = "quantile", gold_merge = "union";
  double damping = 0.85, tolerance = 1e-8, jump_floor = 0.1;
  int max_iterations = 100;
  double int_constant = 0.0, threshold = 0.35;
  std::vector<double> grid;
  bool emolex_fallback = false;
  std::uint64_t seed = 0;
  int resamples = 50;
  std::size_t sample_size = 500;
};

struct Options {
  CLI::Option* corpus = nullptr;
  CLI::Option* split = nullptr;
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> setters;
};

void AddConfigFlags(CLI::App* app, Flags& f, Options& o) {
  app->add_option("--manifest", f.manifest,
                  "Start from the config recorded in a run manifest");
  o.corpus = app->add_option("--corpus", f.corpus_paths,
                             "Corpus file (JSON lines); repeat with --split");
  o.split = app->add_option("--split", f.splits,
                            "Split of the matching --corpus: train, validation, test");
  auto set = [&](CLI::Option* opt, std::function<void(RunConfig&)> fn) {
    o.setters.emplace_back(opt, std::move(fn));
  };
  set(app->add_option("--intensity-lex", f.intensity_lex,
                      "Intensity lexicon TSV (word, emotion, score)"),
      [&f](RunConfig& c) { c.intensity_lexicon = f.intensity_lex; });
  set(app->add_option("--emolex", f.emolex,
                      "EmoLex TSV (word, emotion, 0/1)"),
      [&f](RunConfig& c) { c.emolex = f.emolex; });
  set(app->add_option("--embeddings", f.embeddings, "EAPV1 sentence vectors"),
      [&f](RunConfig& c) { c.embeddings = f.embeddings; });
  set(app->add_option("--threshold-file", f.threshold_file,
                      "Per-emotion thresholds (emotion<TAB>t); skips tuning"),
      [&f](RunConfig& c) { c.threshold_file = f.threshold_file; });
  set(app->add_option("--token-cap", f.token_cap,
                      "Kept tokens scored per post (default 512)"),
      [&f](RunConfig& c) { c.token_cap = f.token_cap; });
  set(app->add_option("--min-freq", f.min_freq,
                      "Minimum training frequency of a stem (default 20)")
          ->check(CLI::PositiveNumber),
      [&f](RunConfig& c) { c.min_freq = f.min_freq; });
  set(app->add_option("--window", f.window, "Co-occurrence window (default 10)")
          ->check(CLI::PositiveNumber),
      [&f](RunConfig& c) { c.window = f.window; });
  set(app->add_option("--window-space", f.window_space,
                      "Distance measured over filtered or raw tokens")
          ->check(CLI::IsMember({"filtered", "raw"})),
      [&f](RunConfig& c) { c.window_space = eap::ParseWindowSpace(f.window_space); });
  set(app->add_option("--damping", f.damping, "PageRank damping (default 0.85)"),
      [&f](RunConfig& c) { c.damping = f.damping; });
  set(app->add_option("--tolerance", f.tolerance,
                      "L1 convergence tolerance (default 1e-8)"),
      [&f](RunConfig& c) { c.tolerance = f.tolerance; });
  set(app->add_option("--max-iter", f.max_iterations,
                      "PageRank iteration cap (default 100)"),
      [&f](RunConfig& c) { c.max_iterations = f.max_iterations; });
  set(app->add_option("--jump-floor", f.jump_floor,
                      "Importance of words outside the lexicon (default 0.1)"),
      [&f](RunConfig& c) { c.jump_floor = f.jump_floor; });
  set(app->add_option("--int-constant", f.int_constant,
                      "Constant lexicon importance for -int (default: lexicon mean)"),
      [&f](RunConfig& c) { c.int_constant = f.int_constant; });
  set(app->add_flag("--emolex-fallback", f.emolex_fallback,
                    "Give EmoLex-only words importance 0.5"),
      [&f](RunConfig& c) { c.emolex_fallback = f.emolex_fallback; });
  set(app->add_option("--meaning-pool", f.meaning_pool,
                      "Sentence pool for meaning scores")
          ->check(CLI::IsMember({"all", "train"})),
      [&f](RunConfig& c) { c.meaning_pool = eap::ParseMeaningPool(f.meaning_pool); });
  set(app->add_option("--score-scale", f.score_scale,
                      "Map from fused scores to the threshold scale")
          ->check(CLI::IsMember({"quantile", "max", "raw"})),
      [&f](RunConfig& c) { c.score_scale = eap::ParseScoreScale(f.score_scale); });
  set(app->add_option("--gold-merge", f.gold_merge,
                      "Annotator merge for sentence F1")
          ->check(CLI::IsMember({"union", "max"})),
      [&f](RunConfig& c) { c.gold_merge = eap::ParseGoldMerge(f.gold_merge); });
  set(app->add_option("--grid", f.grid, "Threshold grid (default 0.20..0.70)"),
      [&f](RunConfig& c) { c.threshold_grid = f.grid; });
  set(app->add_option("--t", f.threshold, "Use this threshold for every emotion"),
      [&f](RunConfig& c) { c.fixed_threshold = f.threshold; });
  set(app->add_option("--seed", f.seed, "Bootstrap seed"),
      [&f](RunConfig& c) { c.seed = f.seed; });
  set(app->add_option("--resamples", f.resamples, "Bootstrap resamples (default 50)"),
      [&f](RunConfig& c) { c.bootstrap_resamples = f.resamples; });
  set(app->add_option("--sample-size", f.sample_size,
                      "Bootstrap sample size (default 500)"),
      [&f](RunConfig& c) { c.bootstrap_sample_size = f.sample_size; });
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

RunConfig MakeConfig(const Flags& f, const Options& o) {
  RunConfig c;
  if (!f.manifest.empty()) {
    c = eap::ConfigFromJson(ReadFile(f.manifest));
  }
  if (o.corpus->count() > 0 || o.split->count() > 0) {
    if (f.corpus_paths.size() != f.splits.size()) {
      throw StageError("cli", "each --corpus needs a matching --split");
    }
    c.corpora.clear();
    for (std::size_t i = 0; i < f.corpus_paths.size(); ++i) {
      c.corpora.push_back({f.corpus_paths[i], eap::ParseSplit(f.splits[i])});
    }
  }
  for (const auto& [opt, apply] : o.setters) {
    if (opt->count() > 0) apply(c);
  }
  return c;
}

eap::WorkspaceNeeds NeedsFor(SystemKind kind, const RunConfig& c) {
  eap::WorkspaceNeeds n;
  n.intensity = eap::UsesIntensityLexicon(kind);
  n.embeddings = eap::UsesEmbeddings(kind);
  n.emolex = kind == SystemKind::kEmoLex || (n.intensity && c.emolex_fallback);
  return n;
}

eap::BootstrapOptions BootstrapFor(const RunConfig& c) {
  return {c.bootstrap_resamples, c.bootstrap_sample_size, c.seed};
}

void WriteTable(const fs::path& path, const std::vector<eap::EvalReport>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  eap::WriteReportTable(rows, out);
}

void PrintReport(const eap::EvalReport& r) {
  std::printf("%-14s avg R2 %.4f  RL %.4f  sentF1 %.4f  detF1 %.4f\n",
              r.system.c_str(), r.average.rouge2, r.average.rouge_l,
              r.average.summary_f1, r.average.detection_f1);
}

void WriteDropTerms(const fs::path& path,
                    const std::vector<eap::DropTermsPoint>& points) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "k";
  for (eap::Emotion e : eap::kAllEmotions) out << '\t' << eap::EmotionName(e);
  out << "\tavg\n";
  for (const auto& p : points) {
    out << p.k;
    for (eap::Emotion e : eap::kAllEmotions) out << '\t' << p.detection_f1[e];
    out << '\t' << p.average_f1 << '\n';
  }
}

std::vector<std::size_t> DefaultKs() {
  std::vector<std::size_t> ks;
  for (std::size_t k = 0; k <= 40; k += 4) ks.push_back(k);
  return ks;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Emotion-aware PageRank: emotion detection and trigger extraction"};
  app.require_subcommand(1);
  Flags f;
  std::string out_dir;
  std::string kind;
  std::string system = "eap";
  std::string pred_dir, gold_path, gold_split = "test", against_dir;
  std::vector<std::string> run_dirs;
  std::vector<std::size_t> ks = DefaultKs();

  struct Sub {
    CLI::App* app;
    Options options;
  };
  std::vector<std::unique_ptr<Sub>> subs;
  auto make = [&](const char* name, const char* help) {
    auto sub = std::make_unique<Sub>();
    sub->app = app.add_subcommand(name, help);
    AddConfigFlags(sub->app, f, sub->options);
    sub->app->add_option("--out", out_dir, "Output directory")->required();
    subs.push_back(std::move(sub));
    return subs.back().get();
  };

  Sub* build_vocab = make("build-vocab", "Write the stem vocabulary (vocab.tsv)");
  Sub* build_graph = make("build-graph", "Write vocabulary and word graph dumps");
  make("summarize", "Run EAP and write summaries and a report");
  Sub* baseline = make("baseline", "Run a baseline system");
  baseline->app->add_option("--kind", kind, "lead1, lead3, textrank, emolex, emointensity")
      ->required()
      ->check(CLI::IsMember({"lead1", "lead3", "textrank", "emolex", "emointensity"}));
  Sub* ablate = make("ablate", "Run an ablation");
  ablate->app->add_option("--kind", kind, "int, sim, int-sim, drop-terms")
      ->required()
      ->check(CLI::IsMember({"int", "sim", "int-sim", "drop-terms"}));
  ablate->app->add_option("--k", ks, "Term counts for drop-terms (default 0,4,..,40)");
  Sub* tune = make("tune", "Tune per-emotion thresholds on the validation split");
  tune->app->add_option("--system", system, "System to tune (default eap)");
  Sub* run = make("run", "Run every system, ablation and significance test");

  auto* evaluate = app.add_subcommand("evaluate", "Score a run directory against gold");
  evaluate->add_option("--pred", pred_dir, "Run directory with summaries.jsonl")
      ->required();
  evaluate->add_option("--gold", gold_path, "Gold corpus file")->required();
  evaluate->add_option("--split", gold_split, "Split name of the gold file");
  evaluate->add_option("--against", against_dir,
                       "Baseline run directory for a paired bootstrap test");
  evaluate->add_option("--out", out_dir, "Write report.json/report.tsv here");
  std::string gold_merge = "union";
  evaluate->add_option("--gold-merge", gold_merge, "union or max")
      ->check(CLI::IsMember({"union", "max"}));
  std::uint64_t eval_seed = 0;
  evaluate->add_option("--seed", eval_seed, "Bootstrap seed");

  auto* export_report = app.add_subcommand(
      "export-report", "Collect report.json files into one table");
  export_report->add_option("--run", run_dirs, "Run directories")->required();
  std::string table_path;
  export_report->add_option("--out", table_path, "Output TSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& sub : subs) {
      if (!sub->app->parsed()) continue;
      RunConfig config = MakeConfig(f, sub->options);
      const fs::path out(out_dir);
      std::error_code ec;
      fs::create_directories(out, ec);
      if (ec) throw StageError("output", "cannot create " + out_dir);

      if (sub.get() == build_vocab || sub.get() == build_graph) {
        eap::Workspace ws = eap::BuildWorkspace(config, {});
        std::ofstream vocab(out / "vocab.tsv", std::ios::binary);
        eap::WriteVocabulary(ws.vocab, vocab);
        if (sub.get() == build_graph) {
          std::ofstream graph(out / "graph.tsv", std::ios::binary);
          eap::WriteGraph(ws.graph, ws.vocab, graph);
        }
        WriteFile(out / "manifest.json",
                  eap::ManifestJson(ws, sub->app->get_name(), std::nullopt));
        std::printf("vocabulary %zu stems, graph %zu edges\n", ws.vocab.size(),
                    ws.graph.num_edges());
        return 0;
      }

      if (sub.get() == tune) {
        SystemKind k = eap::ParseSystem(system);
        eap::Workspace ws = eap::BuildWorkspace(config, NeedsFor(k, config));
        auto val = ws.IndexOf(eap::Split::kValidation);
        if (!val) throw StageError("tune", "a validation split is required");
        eap::SystemScores scores = eap::ScoreSystem(ws, k);
        auto t = eap::TuneThresholds(ws, scores, *val, config.threshold_grid);
        std::ofstream tout(out / "thresholds.tsv", std::ios::binary);
        eap::WriteThresholds(t, tout);
        eap::WriteThresholds(t, std::cout);
        return 0;
      }

      if (sub.get() == run) {
        eap::WorkspaceNeeds needs = NeedsFor(SystemKind::kEap, config);
        needs.emolex = true;
        eap::Workspace ws = eap::BuildWorkspace(config, needs);
        std::vector<eap::EvalReport> rows;
        eap::SystemRun eap_run = eap::WriteSystemRun(ws, SystemKind::kEap, out / "eap");
        eap_run.report.system = "eap";
        for (SystemKind k :
             {SystemKind::kLead1, SystemKind::kLead3, SystemKind::kTextRank,
              SystemKind::kEmoLex, SystemKind::kEmoIntensity, SystemKind::kEapNoInt,
              SystemKind::kEapNoSim, SystemKind::kEapNoIntNoSim}) {
          eap::SystemRun r =
              eap::WriteSystemRun(ws, k, out / std::string(eap::SystemName(k)));
          r.report.significance =
              eap::CompareReports(eap_run.report, r.report, BootstrapFor(config));
          r.report.significance->against = "eap";
          rows.push_back(r.report);
        }
        rows.insert(rows.begin(), eap_run.report);
        for (const auto& r : rows) PrintReport(r);
        WriteTable(out / "report.tsv", rows);
        std::vector<std::size_t> run_ks;
        for (std::size_t k : DefaultKs()) {
          if (k <= ws.vocab.size()) run_ks.push_back(k);
        }
        auto points = eap::DropTopTerms(ws, eap_run, run_ks);
        WriteDropTerms(out / "drop_terms.tsv", points);
        WriteFile(out / "manifest.json", eap::ManifestJson(ws, "run", eap_run));
        return 0;
      }

      SystemKind k = SystemKind::kEap;
      if (sub.get() == baseline) k = eap::ParseSystem(kind);
      if (sub.get() == ablate) {
        if (kind == "int") k = SystemKind::kEapNoInt;
        if (kind == "sim") k = SystemKind::kEapNoSim;
        if (kind == "int-sim") k = SystemKind::kEapNoIntNoSim;
      }
      eap::Workspace ws = eap::BuildWorkspace(config, NeedsFor(k, config));
      eap::SystemRun r = eap::WriteSystemRun(ws, k, out);
      PrintReport(r.report);
      if (sub.get() == ablate && kind == "drop-terms") {
        auto points = eap::DropTopTerms(ws, r, ks);
        WriteDropTerms(out / "drop_terms.tsv", points);
        for (const auto& p : points) std::printf("k=%zu avg F1 %.4f\n", p.k, p.average_f1);
      }
      return 0;
    }

    if (evaluate->parsed()) {
      eap::Corpus gold = eap::LoadCorpus(gold_path, eap::ParseSplit(gold_split));
      auto score = [&](const fs::path& dir) {
        auto predictions = eap::ReadSummaries(dir / "summaries.jsonl", gold.posts);
        eap::EvalReport r =
            eap::Evaluate(gold.posts, predictions, eap::ParseGoldMerge(gold_merge));
        r.system = dir.filename().string();
        if (r.system.empty()) r.system = dir.parent_path().filename().string();
        return r;
      };
      eap::EvalReport report = score(pred_dir);
      if (!against_dir.empty()) {
        eap::EvalReport base = score(against_dir);
        eap::BootstrapOptions opts;
        opts.seed = eval_seed;
        report.significance = eap::CompareReports(report, base, opts);
      }
      PrintReport(report);
      if (report.significance) {
        std::printf("vs %s: p(R2) %.3f  p(RL) %.3f\n",
                    report.significance->against.c_str(),
                    report.significance->rouge2_p, report.significance->rouge_l_p);
      }
      if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        WriteFile(fs::path(out_dir) / "report.json", eap::ReportJson(report));
        WriteTable(fs::path(out_dir) / "report.tsv", {report});
      }
      return 0;
    }

    if (export_report->parsed()) {
      std::vector<eap::EvalReport> rows;
      for (const auto& dir : run_dirs) {
        rows.push_back(eap::ReportFromJson(ReadFile(fs::path(dir) / "report.json")));
      }
      WriteTable(table_path, rows);
      return 0;
    }
  } catch (const StageError& e) {
    std::fprintf(stderr, "eap: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "eap: cli: %s\n", e.what());
    return 1;
  }
  return 0;
}
