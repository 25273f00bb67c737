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

#include "eap/textpipe.h"

#include <gtest/gtest.h>

#include <sstream>

namespace eap {
namespace {

std::vector<std::string> Surfaces(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.surface);
  return out;
}

std::vector<std::string> Stems(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& t : FilterAndStem(TokenizeAndTag(text))) out.push_back(t.stem);
  return out;
}

Post MakePost(std::string id, std::vector<std::string> sentences) {
  Post p;
  p.post_id = std::move(id);
  p.sentences = std::move(sentences);
  p.scored_sentences = p.sentences.size();
  return p;
}

TEST(TextpipeTest, SplitsPunctuationAndClitics) {
  auto tokens = TokenizeAndTag("She didn't go, did she?");
  EXPECT_EQ(Surfaces(tokens),
            (std::vector<std::string>{"She", "did", "n't", "go", ",", "did",
                                      "she", "?"}));
  EXPECT_TRUE(tokens[4].punctuation);
  EXPECT_FALSE(tokens[2].punctuation);
}

TEST(TextpipeTest, FoldsCurlyApostrophes) {
  auto curly = Surfaces(TokenizeAndTag("I’m tired"));
  auto plain = Surfaces(TokenizeAndTag("I'm tired"));
  EXPECT_EQ(curly, plain);
}

TEST(TextpipeTest, TagsCommonWords) {
  auto tokens = TokenizeAndTag("The nurses were kind and honest with me.");
  std::vector<std::string> tags;
  for (const auto& t : tokens) tags.emplace_back(PosName(t.pos));
  EXPECT_EQ(tags, (std::vector<std::string>{"OTHER", "NOUN", "VERB", "NOUN",
                                            "OTHER", "ADJ", "OTHER", "PRON",
                                            "OTHER"}));
}

TEST(TextpipeTest, KeepsContentWordsAndPronouns) {
  EXPECT_EQ(Stems("Dogs chase cats."),
            (std::vector<std::string>{"dog", "chase", "cat"}));
  EXPECT_EQ(Stems("She quickly ran to the old store."),
            (std::vector<std::string>{"she", "quickli", "ran", "old", "store"}));
  EXPECT_EQ(Stems("Got my first vaccine dose today!"),
            (std::vector<std::string>{"got", "vaccin", "dose", "todai"}));
}

TEST(TextpipeTest, ContextPicksVerbAfterModal) {
  auto tokens = TokenizeAndTag("We will frobnicate.");
  EXPECT_EQ(tokens[2].pos, Pos::kVerb);
}

TEST(TextpipeTest, KeptPosSet) {
  EXPECT_TRUE(IsKeptPos(Pos::kNoun));
  EXPECT_TRUE(IsKeptPos(Pos::kVerb));
  EXPECT_TRUE(IsKeptPos(Pos::kAdj));
  EXPECT_TRUE(IsKeptPos(Pos::kAdv));
  EXPECT_TRUE(IsKeptPos(Pos::kPron));
  EXPECT_FALSE(IsKeptPos(Pos::kOther));
}

TEST(TextpipeTest, CountKeptTokensMatchesFilter) {
  for (std::string_view s : {"Dogs chase cats.", "", "... !!", "The the the.",
                             "I am so happy today and I hope it lasts."}) {
    EXPECT_EQ(CountKeptTokens(s), FilterAndStem(TokenizeAndTag(s)).size()) << s;
  }
}

TEST(TextpipeTest, RawPositionsRunAcrossSentences) {
  auto post = AnalyzePost(MakePost("p", {"Dogs chase the cats.", "Cats run."}));
  ASSERT_EQ(post.sentences.size(), 2u);
  const auto& a = post.sentences[0];
  const auto& b = post.sentences[1];
  EXPECT_EQ(a.raw_tokens, 4u);
  ASSERT_EQ(a.kept.size(), 3u);
  EXPECT_EQ(a.kept[0].raw_position, 0u);
  EXPECT_EQ(a.kept[2].raw_position, 3u);
  ASSERT_EQ(b.kept.size(), 2u);
  EXPECT_EQ(b.kept[0].raw_position, 4u);
  EXPECT_EQ(b.kept[1].raw_position, 5u);
}

TEST(TextpipeTest, OnlyScoredSentencesAreAnalyzed) {
  Post p = MakePost("p", {"Dogs bark.", "Cats sleep.", "Birds sing."});
  p.scored_sentences = 2;
  EXPECT_EQ(AnalyzePost(p).sentences.size(), 2u);
}

TEST(TextpipeTest, VocabularyIsLexicographicAndFiltered) {
  std::vector<AnalyzedPost> posts = {
      AnalyzePost(MakePost("a", {"Zebras chase dogs.", "Dogs chase zebras."})),
      AnalyzePost(MakePost("b", {"Dogs sleep."}))};
  auto vocab = BuildVocabulary(posts, 2);
  EXPECT_EQ(vocab.stems(), (std::vector<std::string>{"chase", "dog", "zebra"}));
  EXPECT_EQ(vocab.freq(*vocab.Find("dog")), 3u);
  EXPECT_FALSE(vocab.Find("sleep"));

  auto ids = vocab.SentenceIds(posts[1]);
  ASSERT_EQ(ids.size(), 1u);
  EXPECT_EQ(ids[0], (std::vector<WordId>{1}));

  EXPECT_THROW(BuildVocabulary(posts, 100), VocabularyError);
}

TEST(TextpipeTest, VocabularyRoundTrip) {
  Vocabulary vocab({"alpha", "beta"}, {5, 3});
  std::ostringstream out;
  WriteVocabulary(vocab, out);
  EXPECT_EQ(out.str(), "alpha\t0\t5\nbeta\t1\t3\n");
  std::istringstream in(out.str());
  auto back = ReadVocabulary(in);
  EXPECT_EQ(back.stems(), vocab.stems());
  EXPECT_EQ(back.freq(1), 3u);
}

TEST(TextpipeTest, DuplicateStemsAreRejected) {
  EXPECT_ANY_THROW(Vocabulary({"a", "a"}, {1, 1}));
}

}  // namespace
}  // namespace eap
