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

#ifndef EAP_EMOTION_H_
#define EAP_EMOTION_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace eap {

// The seven emotions annotated in the benchmark. The underlying values are
// dense so an Emotion can index per-emotion arrays directly.
enum class Emotion : std::size_t {
  kAnger = 0,
  kAnticipation,
  kJoy,
  kTrust,
  kFear,
  kSadness,
  kDisgust,
};

inline constexpr std::size_t kNumEmotions = 7;

inline constexpr std::array<Emotion, kNumEmotions> kAllEmotions = {
    Emotion::kAnger, Emotion::kAnticipation, Emotion::kJoy,
    Emotion::kTrust, Emotion::kFear,         Emotion::kSadness,
    Emotion::kDisgust,
};

// Per-emotion storage indexed by Emotion.
template <typename T>
class PerEmotion {
 public:
  PerEmotion() = default;
  explicit PerEmotion(const T& fill) { values_.fill(fill); }

  T& operator[](Emotion e) { return values_[static_cast<std::size_t>(e)]; }
  const T& operator[](Emotion e) const {
    return values_[static_cast<std::size_t>(e)];
  }

  auto begin() { return values_.begin(); }
  auto end() { return values_.end(); }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

 private:
  std::array<T, kNumEmotions> values_{};
};

std::string_view EmotionName(Emotion e);

// Returns nullopt for anything outside the closed set. Matching is exact
// (lowercase), mirroring the corpus and lexicon files.
std::optional<Emotion> ParseEmotion(std::string_view name);

// Like ParseEmotion but throws std::invalid_argument naming the label.
Emotion ParseEmotionOrThrow(std::string_view name);

}  // namespace eap

#endif  // EAP_EMOTION_H_
