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

#ifndef EAP_TEXTPIPE_H_
#define EAP_TEXTPIPE_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "eap/corpus.h"

namespace eap {

enum class Pos { kNoun, kVerb, kAdj, kAdv, kPron, kOther };

std::string_view PosName(Pos pos);

struct Token {
  std::string surface;
  Pos pos = Pos::kOther;
  // Filled by FilterAndStem; empty straight out of the tagger.
  std::string stem;
  // True for tokens made only of punctuation/symbols.
  bool punctuation = false;
};

// Splits on whitespace, peels punctuation off word edges, separates English
// clitics ('m 're 's 've 'll 'd n't) and tags each token with a coarse POS
// from the bundled lexicon tagger. Curly apostrophes are folded to ASCII.
std::vector<Token> TokenizeAndTag(std::string_view text);

// Keeps nouns, verbs, adjectives, adverbs and pronouns, drops punctuation,
// lowercases and attaches Porter stems. Order is preserved.
std::vector<Token> FilterAndStem(std::vector<Token> tokens);

bool IsKeptPos(Pos pos);

// A kept token with its position in the post's raw (non-punctuation) token
// stream, needed for raw-space co-occurrence windows.
struct KeptToken {
  std::string stem;
  std::size_t raw_position = 0;
};

struct AnalyzedSentence {
  std::vector<KeptToken> kept;
  std::size_t raw_tokens = 0;
};

// Filtered, stemmed view of the scored sentences of one post.
struct AnalyzedPost {
  std::string post_id;
  std::vector<AnalyzedSentence> sentences;
};

// Only the post's scored sentences are analyzed. Raw positions continue
// across sentence boundaries within the post.
AnalyzedPost AnalyzePost(const Post& post);
std::vector<AnalyzedPost> AnalyzeCorpus(const Corpus& corpus);

// Number of kept tokens in a sentence (the unit of the token cap).
std::size_t CountKeptTokens(std::string_view sentence);

using WordId = std::uint32_t;

class Vocabulary {
 public:
  Vocabulary() = default;
  // Stems must be unique; ids follow the given order.
  Vocabulary(std::vector<std::string> stems, std::vector<std::size_t> freqs);

  std::size_t size() const { return stems_.size(); }
  bool empty() const { return stems_.empty(); }
  const std::string& stem(WordId id) const { return stems_[id]; }
  std::size_t freq(WordId id) const { return freqs_[id]; }
  const std::vector<std::string>& stems() const { return stems_; }
  std::optional<WordId> Find(std::string_view stem) const;

  // Maps each sentence's kept stems to ids, dropping out-of-vocabulary ones.
  std::vector<std::vector<WordId>> SentenceIds(const AnalyzedPost& post) const;

 private:
  std::vector<std::string> stems_;
  std::vector<std::size_t> freqs_;
  std::unordered_map<std::string, WordId> index_;
};

class VocabularyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Stems with corpus frequency >= min_freq, sorted lexicographically so ids
// are independent of post order. Throws VocabularyError when empty.
Vocabulary BuildVocabulary(std::span<const AnalyzedPost> posts,
                           std::size_t min_freq);
Vocabulary BuildVocabulary(const Corpus& corpus, std::size_t min_freq);

// TSV: stem \t id \t freq
void WriteVocabulary(const Vocabulary& vocab, std::ostream& out);
Vocabulary ReadVocabulary(std::istream& in);

}  // namespace eap

#endif  // EAP_TEXTPIPE_H_
