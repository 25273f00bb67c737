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

#ifndef EAP_CORPUS_H_
#define EAP_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eap/emotion.h"

namespace eap {

enum class Split { kTrain, kValidation, kTest };

std::string_view SplitName(Split split);
Split ParseSplit(std::string_view name);

// One annotator's trigger summary: sorted, duplicate-free sentence indices.
using Reference = std::vector<std::size_t>;

// Token budget per post, counted on the POS-filtered stream.
inline constexpr std::size_t kDefaultTokenCap = 512;

struct Post {
  std::string post_id;
  std::vector<std::string> sentences;
  PerEmotion<std::vector<Reference>> gold;
  // Leading sentences that fit inside the token cap. Everything downstream
  // scores only sentences [0, scored_sentences).
  std::size_t scored_sentences = 0;
};

struct TruncationRecord {
  std::string post_id;
  std::size_t kept_sentences = 0;
  std::size_t total_sentences = 0;
  std::size_t kept_tokens = 0;
  std::size_t total_tokens = 0;
};

struct Corpus {
  Split split = Split::kTrain;
  std::vector<Post> posts;
  std::vector<TruncationRecord> truncated;
};

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses line-delimited JSON records
//   {"post_id": str, "sentences": [str], "gold": {"<emotion>": [[int,...]]}}
// validating labels, indices, reference counts and post_id uniqueness, then
// applies the token cap at whole-sentence granularity. Blank lines are
// skipped. Errors carry the 1-based line number.
Corpus ParseCorpus(std::istream& in, Split split,
                   std::size_t token_cap = kDefaultTokenCap);
Corpus LoadCorpus(const std::filesystem::path& path, Split split,
                  std::size_t token_cap = kDefaultTokenCap);

// Empty when the emotion is absent from the post's annotations.
const std::vector<Reference>& GoldReferences(const Post& post, Emotion e);

// Gold emotion set of a post: emotions with at least one reference.
PerEmotion<bool> GoldEmotions(const Post& post);

// Single-line JSON in the corpus file format. Emotions without references
// are omitted.
std::string SerializePost(const Post& post);

}  // namespace eap

#endif  // EAP_CORPUS_H_
