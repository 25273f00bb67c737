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

#ifndef EAP_LEXICONS_H_
#define EAP_LEXICONS_H_

#include <bitset>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "eap/emotion.h"
#include "eap/textpipe.h"

namespace eap {

class LexiconError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Binary word-emotion associations, keyed by Porter stem.
class EmoLex {
 public:
  bool Associated(std::string_view stem, Emotion e) const;
  void Set(std::string_view stem, Emotion e);
  std::size_t size() const { return assoc_.size(); }

 private:
  std::unordered_map<std::string, std::bitset<kNumEmotions>> assoc_;
};

// Real-valued word-emotion intensities in [0, 1], keyed by Porter stem.
// When several words share a stem the largest intensity is kept.
class IntensityLexicon {
 public:
  std::optional<double> Lookup(std::string_view stem, Emotion e) const;
  void Set(std::string_view stem, Emotion e, double value);
  // Mean over all entries for e; nullopt when e has none.
  std::optional<double> MeanIntensity(Emotion e) const;
  std::size_t EntryCount(Emotion e) const { return entry_counts_[e]; }

 private:
  std::unordered_map<std::string, PerEmotion<double>> values_;
  PerEmotion<double> sums_{0.0};
  PerEmotion<std::size_t> entry_counts_{0};
};

// NRC emotion-intensity TSV: word \t emotion \t score. NRC emotions outside
// the seven used here (surprise) and EmoLex sentiment columns (positive,
// negative) are skipped; any other label is an error. A header line
// starting with "word" or "term" is tolerated.
IntensityLexicon ParseIntensityLexicon(std::istream& in);
IntensityLexicon LoadIntensityLexicon(const std::filesystem::path& path);

// EmoLex word-level TSV: word \t emotion \t {0,1}.
EmoLex ParseEmoLex(std::istream& in);
EmoLex LoadEmoLex(const std::filesystem::path& path);

struct ImportanceOptions {
  // c: importance of words outside the lexicon for the emotion.
  double floor = 0.1;
  // -int ablation: when set, every lexicon word gets this constant instead
  // of its intensity.
  std::optional<double> lexicon_constant;
  // When set, stems missing from the intensity lexicon but associated with
  // the emotion in EmoLex get `emolex_fallback_value`.
  const EmoLex* emolex_fallback = nullptr;
  double emolex_fallback_value = 0.5;
};

// i_e(w): intensity when (w, e) is in the lexicon, else c.
double Importance(std::string_view stem, Emotion e,
                  const IntensityLexicon& lexicon,
                  const ImportanceOptions& options);

// Random-jump distribution i_e(w) / N over the vocabulary. `removed`, when
// non-empty, zeroes the listed vertices before normalization.
std::vector<double> JumpDistribution(Emotion e, const Vocabulary& vocab,
                                     const IntensityLexicon& lexicon,
                                     const ImportanceOptions& options,
                                     std::span<const bool> removed = {});

std::vector<double> UniformJump(std::size_t n,
                                std::span<const bool> removed = {});

}  // namespace eap

#endif  // EAP_LEXICONS_H_
