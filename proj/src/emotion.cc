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

#include "eap/emotion.h"

#include <stdexcept>
#include <string>

namespace eap {

std::string_view EmotionName(Emotion e) {
  switch (e) {
    case Emotion::kAnger: return "anger";
    case Emotion::kAnticipation: return "anticipation";
    case Emotion::kJoy: return "joy";
    case Emotion::kTrust: return "trust";
    case Emotion::kFear: return "fear";
    case Emotion::kSadness: return "sadness";
    case Emotion::kDisgust: return "disgust";
  }
  return "unknown";
}

std::optional<Emotion> ParseEmotion(std::string_view name) {
  for (Emotion e : kAllEmotions) {
    if (EmotionName(e) == name) return e;
  }
  return std::nullopt;
}

Emotion ParseEmotionOrThrow(std::string_view name) {
  auto e = ParseEmotion(name);
  if (!e) {
    throw std::invalid_argument("unknown emotion label '" + std::string(name) +
                                "'");
  }
  return *e;
}

}  // namespace eap
