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

#include "eap/evalkit.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

namespace eap {
namespace {

bool IsAsciiAlnum(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z');
}

Prf MakePrf(std::size_t overlap, std::size_t candidate_total,
            std::size_t reference_total) {
  Prf out;
  if (overlap == 0 || candidate_total == 0 || reference_total == 0) return out;
  out.precision = static_cast<double>(overlap) / candidate_total;
  out.recall = static_cast<double>(overlap) / reference_total;
  out.f1 = 2.0 * out.precision * out.recall / (out.precision + out.recall);
  return out;
}

std::unordered_map<std::string, std::size_t> NgramCounts(
    std::span<const std::string> tokens, std::size_t n) {
  std::unordered_map<std::string, std::size_t> counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (std::size_t j = 1; j < n; ++j) {
      key.push_back(' ');
      key += tokens[i + j];
    }
    ++counts[key];
  }
  return counts;
}

std::size_t LcsLength(std::span<const std::string> a,
                      std::span<const std::string> b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

template <typename Fn>
Prf BestOf(std::span<const std::vector<std::string>> references, Fn score) {
  if (references.empty()) {
    throw std::invalid_argument("ROUGE needs at least one reference");
  }
  Prf best = score(references[0]);
  for (std::size_t r = 1; r < references.size(); ++r) {
    Prf p = score(references[r]);
    if (p.f1 > best.f1) best = p;
  }
  return best;
}

std::vector<std::string> Concat(
    const std::vector<std::vector<std::string>>& sentence_tokens,
    const Reference& indices) {
  std::vector<std::string> out;
  for (std::size_t i : indices) {
    if (i >= sentence_tokens.size()) continue;
    out.insert(out.end(), sentence_tokens[i].begin(), sentence_tokens[i].end());
  }
  return out;
}

BinaryCounts CountAgainst(const Reference& predicted, const Reference& gold) {
  BinaryCounts c;
  std::size_t i = 0, j = 0;
  while (i < predicted.size() || j < gold.size()) {
    if (j == gold.size() || (i < predicted.size() && predicted[i] < gold[j])) {
      ++c.fp;
      ++i;
    } else if (i == predicted.size() || gold[j] < predicted[i]) {
      ++c.fn;
      ++j;
    } else {
      ++c.tp;
      ++i;
      ++j;
    }
  }
  return c;
}

Reference Sorted(Reference r) {
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::string Fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

nlohmann::ordered_json MetricsJson(const EmotionMetrics& m) {
  nlohmann::ordered_json j;
  j["rouge2"] = m.rouge2;
  j["rougeL"] = m.rouge_l;
  j["summary_f1"] = m.summary_f1;
  j["detection_f1"] = m.detection_f1;
  j["instances"] = m.instances;
  return j;
}

}  // namespace

std::vector<std::string> RougeTokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (unsigned char c : text) {
    if (IsAsciiAlnum(c)) {
      cur.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

Prf RougeN(std::span<const std::string> candidate,
           std::span<const std::string> reference, std::size_t n) {
  if (n < 1) throw std::invalid_argument("ROUGE-N needs n >= 1");
  auto cand = NgramCounts(candidate, n);
  auto ref = NgramCounts(reference, n);
  std::size_t overlap = 0;
  for (const auto& [gram, count] : cand) {
    auto it = ref.find(gram);
    if (it != ref.end()) overlap += std::min(count, it->second);
  }
  std::size_t cand_total = candidate.size() >= n ? candidate.size() - n + 1 : 0;
  std::size_t ref_total = reference.size() >= n ? reference.size() - n + 1 : 0;
  return MakePrf(overlap, cand_total, ref_total);
}

Prf RougeL(std::span<const std::string> candidate,
           std::span<const std::string> reference) {
  if (candidate.empty() || reference.empty()) return {};
  return MakePrf(LcsLength(candidate, reference), candidate.size(),
                 reference.size());
}

Prf RougeN(std::span<const std::string> candidate,
           std::span<const std::vector<std::string>> references,
           std::size_t n) {
  return BestOf(references, [&](const std::vector<std::string>& r) {
    return RougeN(candidate, r, n);
  });
}

Prf RougeL(std::span<const std::string> candidate,
           std::span<const std::vector<std::string>> references) {
  return BestOf(references, [&](const std::vector<std::string>& r) {
    return RougeL(candidate, r);
  });
}

double F1FromCounts(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn) {
  if (tp + fp + fn == 0) return 1.0;
  return 2.0 * static_cast<double>(tp) /
         static_cast<double>(2 * tp + fp + fn);
}

std::string_view GoldMergeName(GoldMerge merge) {
  return merge == GoldMerge::kUnion ? "union" : "max";
}

GoldMerge ParseGoldMerge(std::string_view name) {
  if (name == "union") return GoldMerge::kUnion;
  if (name == "max") return GoldMerge::kMax;
  throw std::invalid_argument("unknown gold merge '" + std::string(name) + "'");
}

BinaryCounts SentenceCounts(const Reference& predicted,
                            std::span<const Reference> references,
                            GoldMerge merge) {
  Reference pred = Sorted(predicted);
  if (references.empty()) return CountAgainst(pred, {});
  if (merge == GoldMerge::kUnion) {
    Reference all;
    for (const Reference& r : references) all.insert(all.end(), r.begin(), r.end());
    return CountAgainst(pred, Sorted(std::move(all)));
  }
  BinaryCounts best = CountAgainst(pred, Sorted(references[0]));
  for (std::size_t r = 1; r < references.size(); ++r) {
    BinaryCounts c = CountAgainst(pred, Sorted(references[r]));
    if (c.F1() > best.F1()) best = c;
  }
  return best;
}

EvalReport Evaluate(std::span<const Post> posts,
                    std::span<const PerEmotion<Reference>> predictions,
                    GoldMerge merge) {
  if (posts.size() != predictions.size()) {
    throw std::invalid_argument("prediction count does not match post count");
  }
  EvalReport report;
  PerEmotion<BinaryCounts> sentence_counts;
  PerEmotion<BinaryCounts> detection_counts;
  PerEmotion<double> r2_sum(0.0), rl_sum(0.0);

  for (std::size_t p = 0; p < posts.size(); ++p) {
    const Post& post = posts[p];
    std::vector<std::vector<std::string>> tokens;
    tokens.reserve(post.sentences.size());
    for (const std::string& s : post.sentences) tokens.push_back(RougeTokenize(s));

    for (Emotion e : kAllEmotions) {
      const Reference& pred = predictions[p][e];
      const auto& refs = post.gold[e];
      sentence_counts[e] += SentenceCounts(pred, refs, merge);

      const bool gold_has = !refs.empty();
      const bool pred_has = !pred.empty();
      if (gold_has && pred_has) ++detection_counts[e].tp;
      if (!gold_has && pred_has) ++detection_counts[e].fp;
      if (gold_has && !pred_has) ++detection_counts[e].fn;
      if (!gold_has) continue;

      std::vector<std::string> candidate = Concat(tokens, Sorted(pred));
      std::vector<std::vector<std::string>> ref_tokens;
      for (const Reference& r : refs) ref_tokens.push_back(Concat(tokens, Sorted(r)));
      InstanceScore inst{post.post_id, e, RougeN(candidate, ref_tokens, 2).f1,
                         RougeL(candidate, ref_tokens).f1};
      r2_sum[e] += inst.rouge2;
      rl_sum[e] += inst.rouge_l;
      ++report.per_emotion[e].instances;
      report.instances.push_back(std::move(inst));
    }
  }

  EmotionMetrics& avg = report.average;
  for (Emotion e : kAllEmotions) {
    EmotionMetrics& m = report.per_emotion[e];
    if (m.instances > 0) {
      m.rouge2 = r2_sum[e] / static_cast<double>(m.instances);
      m.rouge_l = rl_sum[e] / static_cast<double>(m.instances);
    }
    m.summary_f1 = sentence_counts[e].F1();
    m.detection_f1 = detection_counts[e].F1();
    avg.rouge2 += m.rouge2 / kNumEmotions;
    avg.rouge_l += m.rouge_l / kNumEmotions;
    avg.summary_f1 += m.summary_f1 / kNumEmotions;
    avg.detection_f1 += m.detection_f1 / kNumEmotions;
    avg.instances += m.instances;
  }
  return report;
}

double BootstrapPValue(std::span<const double> a, std::span<const double> b,
                       const BootstrapOptions& options) {
  if (a.empty()) throw std::invalid_argument("bootstrap on empty input");
  if (a.size() != b.size()) {
    throw std::invalid_argument("bootstrap inputs are not paired");
  }
  if (options.resamples < 1 || options.sample_size < 1) {
    throw std::invalid_argument("bootstrap needs resamples and sample size >= 1");
  }
  const std::uint64_t n = a.size();
  int not_better = 0;
  for (int r = 0; r < options.resamples; ++r) {
    std::mt19937_64 rng(SplitMix64(options.seed ^ SplitMix64(r)));
    double sum_a = 0.0, sum_b = 0.0;
    for (std::size_t k = 0; k < options.sample_size; ++k) {
      auto idx = static_cast<std::size_t>(
          (static_cast<unsigned __int128>(rng()) * n) >> 64);
      sum_a += a[idx];
      sum_b += b[idx];
    }
    if (sum_b >= sum_a) ++not_better;
  }
  return static_cast<double>(not_better) / options.resamples;
}

Significance CompareReports(const EvalReport& system,
                            const EvalReport& baseline,
                            const BootstrapOptions& options) {
  std::map<std::pair<std::string, Emotion>, const InstanceScore*> base;
  for (const InstanceScore& s : baseline.instances) {
    base[{s.post_id, s.emotion}] = &s;
  }
  if (base.size() != system.instances.size()) {
    throw std::invalid_argument("reports cover different evaluation instances");
  }
  std::vector<double> a2, b2, al, bl;
  for (const InstanceScore& s : system.instances) {
    auto it = base.find({s.post_id, s.emotion});
    if (it == base.end()) {
      throw std::invalid_argument("baseline has no instance for post " +
                                  s.post_id);
    }
    a2.push_back(s.rouge2);
    b2.push_back(it->second->rouge2);
    al.push_back(s.rouge_l);
    bl.push_back(it->second->rouge_l);
  }
  Significance sig;
  sig.against = baseline.system;
  sig.rouge2_p = BootstrapPValue(a2, b2, options);
  sig.rouge_l_p = BootstrapPValue(al, bl, options);
  return sig;
}

std::string ReportJson(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["system"] = report.system;
  j["config_hash"] = report.config_hash;
  nlohmann::ordered_json per;
  for (Emotion e : kAllEmotions) {
    per[std::string(EmotionName(e))] = MetricsJson(report.per_emotion[e]);
  }
  j["per_emotion"] = per;
  j["average"] = MetricsJson(report.average);
  if (report.significance) {
    j["significance"] = {{"against", report.significance->against},
                         {"rouge2_p", report.significance->rouge2_p},
                         {"rougeL_p", report.significance->rouge_l_p}};
  }
  nlohmann::ordered_json instances = nlohmann::ordered_json::array();
  for (const InstanceScore& s : report.instances) {
    instances.push_back({s.post_id, std::string(EmotionName(s.emotion)),
                         s.rouge2, s.rouge_l});
  }
  j["instances"] = std::move(instances);
  return j.dump(2) + "\n";
}

EvalReport ReportFromJson(std::string_view text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  auto metrics = [](const nlohmann::json& m) {
    EmotionMetrics out;
    out.rouge2 = m.at("rouge2").get<double>();
    out.rouge_l = m.at("rougeL").get<double>();
    out.summary_f1 = m.at("summary_f1").get<double>();
    out.detection_f1 = m.at("detection_f1").get<double>();
    out.instances = m.at("instances").get<std::size_t>();
    return out;
  };
  EvalReport r;
  r.system = j.at("system").get<std::string>();
  r.config_hash = j.value("config_hash", "");
  for (Emotion e : kAllEmotions) {
    r.per_emotion[e] = metrics(j.at("per_emotion").at(std::string(EmotionName(e))));
  }
  r.average = metrics(j.at("average"));
  if (j.contains("significance")) {
    const auto& s = j["significance"];
    r.significance = Significance{s.at("against").get<std::string>(),
                                  s.at("rouge2_p").get<double>(),
                                  s.at("rougeL_p").get<double>()};
  }
  if (j.contains("instances")) {
    for (const auto& i : j["instances"]) {
      r.instances.push_back({i.at(0).get<std::string>(),
                             ParseEmotionOrThrow(i.at(1).get<std::string>()),
                             i.at(2).get<double>(), i.at(3).get<double>()});
    }
  }
  return r;
}

void WriteReportTable(std::span<const EvalReport> reports, std::ostream& out) {
  static constexpr const char* kMetrics[] = {"R2", "RL", "SF1", "DF1"};
  out << "system";
  for (Emotion e : kAllEmotions) {
    for (const char* m : kMetrics) out << '\t' << EmotionName(e) << '_' << m;
  }
  for (const char* m : kMetrics) out << "\tavg_" << m;
  out << "\tagainst\tp_R2\tp_RL\n";
  auto cells = [&](const EmotionMetrics& m) {
    out << '\t' << Fixed(m.rouge2) << '\t' << Fixed(m.rouge_l) << '\t'
        << Fixed(m.summary_f1) << '\t' << Fixed(m.detection_f1);
  };
  for (const EvalReport& r : reports) {
    out << r.system;
    for (Emotion e : kAllEmotions) cells(r.per_emotion[e]);
    cells(r.average);
    if (r.significance) {
      out << '\t' << r.significance->against << '\t'
          << Fixed(r.significance->rouge2_p) << '\t'
          << Fixed(r.significance->rouge_l_p);
    } else {
      out << "\t-\t-\t-";
    }
    out << '\n';
  }
}

}  // namespace eap
