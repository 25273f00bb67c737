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

#include "eap/lexicons.h"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "eap/porter_stemmer.h"

namespace eap {
namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool IsSkippedLabel(std::string_view label) {
  return label == "surprise" || label == "positive" || label == "negative";
}

struct Row {
  std::string word;
  std::string label;
  std::string value;
};

// Returns false for blank lines and headers.
bool SplitRow(const std::string& line, std::size_t line_no, Row& row) {
  if (line.empty() || line == "\r") return false;
  std::istringstream fields(line);
  if (!std::getline(fields, row.word, '\t') ||
      !std::getline(fields, row.label, '\t') ||
      !std::getline(fields, row.value)) {
    throw LexiconError("line " + std::to_string(line_no) +
                       ": expected word<TAB>emotion<TAB>value");
  }
  if (!row.value.empty() && row.value.back() == '\r') row.value.pop_back();
  if (line_no == 1 && (row.word == "word" || row.word == "term" ||
                       row.word == "English Word")) {
    return false;
  }
  return true;
}

double ParseValue(const std::string& s, std::size_t line_no) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) {
    throw LexiconError("line " + std::to_string(line_no) + ": bad value '" +
                       s + "'");
  }
  return v;
}

std::ifstream Open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LexiconError("cannot open lexicon " + path.string());
  return in;
}

}  // namespace

bool EmoLex::Associated(std::string_view stem, Emotion e) const {
  auto it = assoc_.find(std::string(stem));
  return it != assoc_.end() && it->second.test(static_cast<std::size_t>(e));
}

void EmoLex::Set(std::string_view stem, Emotion e) {
  assoc_[std::string(stem)].set(static_cast<std::size_t>(e));
}

std::optional<double> IntensityLexicon::Lookup(std::string_view stem,
                                               Emotion e) const {
  auto it = values_.find(std::string(stem));
  if (it == values_.end() || it->second[e] < 0.0) return std::nullopt;
  return it->second[e];
}

void IntensityLexicon::Set(std::string_view stem, Emotion e, double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw LexiconError("intensity outside [0,1] for '" + std::string(stem) +
                       "'");
  }
  auto [it, inserted] = values_.try_emplace(std::string(stem), -1.0);
  double& slot = it->second[e];
  if (slot < 0.0) {
    slot = value;
    sums_[e] += value;
    ++entry_counts_[e];
  } else if (value > slot) {
    sums_[e] += value - slot;
    slot = value;
  }
}

std::optional<double> IntensityLexicon::MeanIntensity(Emotion e) const {
  if (entry_counts_[e] == 0) return std::nullopt;
  return sums_[e] / static_cast<double>(entry_counts_[e]);
}

IntensityLexicon ParseIntensityLexicon(std::istream& in) {
  IntensityLexicon lex;
  std::string line;
  std::size_t line_no = 0;
  Row row;
  while (std::getline(in, line)) {
    ++line_no;
    if (!SplitRow(line, line_no, row)) continue;
    if (IsSkippedLabel(row.label)) continue;
    auto emotion = ParseEmotion(row.label);
    if (!emotion) {
      throw LexiconError("line " + std::to_string(line_no) +
                         ": unknown emotion '" + row.label + "'");
    }
    double v = ParseValue(row.value, line_no);
    if (v < 0.0 || v > 1.0) {
      throw LexiconError("line " + std::to_string(line_no) +
                         ": intensity outside [0,1]: " + row.value);
    }
    lex.Set(PorterStem(Lower(row.word)), *emotion, v);
  }
  return lex;
}

IntensityLexicon LoadIntensityLexicon(const std::filesystem::path& path) {
  auto in = Open(path);
  return ParseIntensityLexicon(in);
}

EmoLex ParseEmoLex(std::istream& in) {
  EmoLex lex;
  std::string line;
  std::size_t line_no = 0;
  Row row;
  while (std::getline(in, line)) {
    ++line_no;
    if (!SplitRow(line, line_no, row)) continue;
    if (IsSkippedLabel(row.label)) continue;
    auto emotion = ParseEmotion(row.label);
    if (!emotion) {
      throw LexiconError("line " + std::to_string(line_no) +
                         ": unknown emotion '" + row.label + "'");
    }
    if (row.value == "1") {
      lex.Set(PorterStem(Lower(row.word)), *emotion);
    } else if (row.value != "0") {
      throw LexiconError("line " + std::to_string(line_no) +
                         ": association must be 0 or 1");
    }
  }
  return lex;
}

EmoLex LoadEmoLex(const std::filesystem::path& path) {
  auto in = Open(path);
  return ParseEmoLex(in);
}

double Importance(std::string_view stem, Emotion e,
                  const IntensityLexicon& lexicon,
                  const ImportanceOptions& options) {
  if (auto v = lexicon.Lookup(stem, e)) {
    return options.lexicon_constant ? *options.lexicon_constant : *v;
  }
  if (options.emolex_fallback != nullptr &&
      options.emolex_fallback->Associated(stem, e)) {
    return options.lexicon_constant ? *options.lexicon_constant
                                    : options.emolex_fallback_value;
  }
  return options.floor;
}

std::vector<double> JumpDistribution(Emotion e, const Vocabulary& vocab,
                                     const IntensityLexicon& lexicon,
                                     const ImportanceOptions& options,
                                     std::span<const bool> removed) {
  if (vocab.empty()) throw LexiconError("jump distribution over empty vocabulary");
  if (!(options.floor > 0.0)) throw LexiconError("importance floor must be > 0");
  std::vector<double> probs(vocab.size());
  double total = 0.0;
  for (WordId w = 0; w < vocab.size(); ++w) {
    if (!removed.empty() && removed[w]) {
      probs[w] = 0.0;
      continue;
    }
    probs[w] = Importance(vocab.stem(w), e, lexicon, options);
    total += probs[w];
  }
  if (!(total > 0.0)) throw LexiconError("jump distribution has zero mass");
  for (double& p : probs) p /= total;
  return probs;
}

std::vector<double> UniformJump(std::size_t n, std::span<const bool> removed) {
  std::size_t active = n;
  if (!removed.empty()) {
    for (std::size_t i = 0; i < n; ++i) active -= removed[i] ? 1 : 0;
  }
  if (active == 0) throw LexiconError("uniform jump over empty vertex set");
  std::vector<double> probs(n, 1.0 / static_cast<double>(active));
  if (!removed.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      if (removed[i]) probs[i] = 0.0;
    }
  }
  return probs;
}

}  // namespace eap
