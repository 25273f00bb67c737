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

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "eap/porter_stemmer.h"

namespace eap {

// Contents of data/pos_lexicon.tsv, embedded at build time.
extern const char* const kPosLexiconData;

namespace {

// Finer classes used for tagging decisions; collapsed to Pos on output.
enum class Fine {
  kDet, kPoss, kPron, kAdp, kConj, kPart, kAux, kModal, kNum, kIntj,
  kNoun, kVerb, kAdj, kAdv, kPunct,
};

Fine ParseFine(std::string_view s) {
  static const std::map<std::string_view, Fine> kNames = {
      {"DET", Fine::kDet},   {"POSS", Fine::kPoss}, {"PRON", Fine::kPron},
      {"ADP", Fine::kAdp},   {"CONJ", Fine::kConj}, {"PART", Fine::kPart},
      {"AUX", Fine::kAux},   {"MODAL", Fine::kModal}, {"NUM", Fine::kNum},
      {"INTJ", Fine::kIntj}, {"NOUN", Fine::kNoun}, {"VERB", Fine::kVerb},
      {"ADJ", Fine::kAdj},   {"ADV", Fine::kAdv},
  };
  auto it = kNames.find(s);
  if (it == kNames.end()) {
    throw std::logic_error("bad tag in POS lexicon: " + std::string(s));
  }
  return it->second;
}

Pos Coarse(Fine f) {
  switch (f) {
    case Fine::kNoun: return Pos::kNoun;
    case Fine::kVerb:
    case Fine::kAux: return Pos::kVerb;
    case Fine::kAdj: return Pos::kAdj;
    case Fine::kAdv: return Pos::kAdv;
    case Fine::kPron: return Pos::kPron;
    default: return Pos::kOther;
  }
}

class Lexicon {
 public:
  Lexicon() {
    std::istringstream in(kPosLexiconData);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      auto tab = line.find('\t');
      if (tab == std::string::npos) continue;
      std::string key = line.substr(0, tab);
      std::vector<Fine> tags;
      std::string_view rest = std::string_view(line).substr(tab + 1);
      while (!rest.empty()) {
        auto comma = rest.find(',');
        tags.push_back(ParseFine(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
      }
      if (key[0] == '~') {
        suffixes_.emplace_back(key.substr(1), tags.front());
      } else {
        words_.emplace(std::move(key), std::move(tags));
      }
    }
    std::stable_sort(suffixes_.begin(), suffixes_.end(),
                     [](const auto& a, const auto& b) {
                       return a.first.size() > b.first.size();
                     });
  }

  const std::vector<Fine>* Find(const std::string& lower) const {
    auto it = words_.find(lower);
    return it == words_.end() ? nullptr : &it->second;
  }

  std::optional<Fine> SuffixTag(const std::string& lower) const {
    for (const auto& [suffix, tag] : suffixes_) {
      if (lower.size() > suffix.size() + 2 && lower.ends_with(suffix)) {
        return tag;
      }
    }
    return std::nullopt;
  }

 private:
  std::unordered_map<std::string, std::vector<Fine>> words_;
  std::vector<std::pair<std::string, Fine>> suffixes_;
};

const Lexicon& TheLexicon() {
  static const Lexicon lexicon;
  return lexicon;
}

bool IsWordByte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c >= 0x80;
}

bool IsSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::string AsciiLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool HasLetter(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
  });
}

std::string FoldApostrophes(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    // U+2018 / U+2019 are E2 80 98 / E2 80 99.
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x80 &&
        (static_cast<unsigned char>(text[i + 2]) == 0x98 ||
         static_cast<unsigned char>(text[i + 2]) == 0x99)) {
      out.push_back('\'');
      i += 2;
    } else {
      out.push_back(text[i]);
    }
  }
  return out;
}

struct RawPiece {
  std::string text;
  bool punctuation;
};

// Splits a word that carries a clitic into host + clitic.
void PushWord(std::string word, std::vector<RawPiece>& out) {
  std::string lower = AsciiLower(word);
  static constexpr std::string_view kClitics[] = {"'m", "'re", "'s", "'ve",
                                                  "'ll", "'d"};
  if (lower.size() > 3 && lower.ends_with("n't")) {
    out.push_back({word.substr(0, word.size() - 3), false});
    out.push_back({word.substr(word.size() - 3), false});
    return;
  }
  for (std::string_view c : kClitics) {
    if (lower.size() > c.size() && lower.ends_with(c)) {
      out.push_back({word.substr(0, word.size() - c.size()), false});
      out.push_back({word.substr(word.size() - c.size()), false});
      return;
    }
  }
  out.push_back({std::move(word), false});
}

std::vector<RawPiece> SplitPieces(std::string_view text) {
  std::vector<RawPiece> pieces;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (IsSpace(c)) {
      ++i;
      continue;
    }
    if (IsWordByte(c)) {
      std::size_t j = i;
      while (j < n) {
        unsigned char d = static_cast<unsigned char>(text[j]);
        if (IsWordByte(d)) {
          ++j;
        } else if ((d == '\'' || d == '-' || d == '.') && j + 1 < n &&
                   IsWordByte(static_cast<unsigned char>(text[j + 1]))) {
          j += 2;
        } else {
          break;
        }
      }
      PushWord(std::string(text.substr(i, j - i)), pieces);
      i = j;
      continue;
    }
    // Leading apostrophe of a bare clitic ("'m" after a space) or quote.
    if (c == '\'' && i + 1 < n &&
        IsWordByte(static_cast<unsigned char>(text[i + 1]))) {
      std::size_t j = i + 1;
      while (j < n && IsWordByte(static_cast<unsigned char>(text[j]))) ++j;
      std::string piece(text.substr(i, j - i));
      std::string lower = AsciiLower(piece);
      if (lower == "'m" || lower == "'re" || lower == "'s" || lower == "'ve" ||
          lower == "'ll" || lower == "'d") {
        pieces.push_back({std::move(piece), false});
        i = j;
        continue;
      }
    }
    std::size_t j = i;
    while (j < n) {
      unsigned char d = static_cast<unsigned char>(text[j]);
      if (IsSpace(d) || IsWordByte(d)) break;
      ++j;
    }
    pieces.push_back({std::string(text.substr(i, j - i)), true});
    i = j;
  }
  return pieces;
}

Fine Disambiguate(const std::vector<Fine>& candidates,
                  std::optional<Fine> prev, const std::string& prev_lower) {
  auto has = [&](Fine f) {
    return std::find(candidates.begin(), candidates.end(), f) !=
           candidates.end();
  };
  if (candidates.size() > 1 && prev) {
    bool verb_context = *prev == Fine::kModal || *prev == Fine::kPron ||
                        prev_lower == "to" || prev_lower == "do" ||
                        prev_lower == "does" || prev_lower == "did";
    bool noun_context = *prev == Fine::kDet || *prev == Fine::kPoss ||
                        *prev == Fine::kAdj;
    if (verb_context && has(Fine::kVerb)) return Fine::kVerb;
    if (noun_context && has(Fine::kNoun)) return Fine::kNoun;
  }
  return candidates.front();
}

Fine TagUnknown(const std::string& lower, std::optional<Fine> prev,
                const std::string& prev_lower) {
  if (!HasLetter(lower)) return Fine::kNum;
  if (prev && (*prev == Fine::kModal || prev_lower == "to")) return Fine::kVerb;
  if (auto tag = TheLexicon().SuffixTag(lower)) return *tag;
  return Fine::kNoun;
}

}  // namespace

std::string_view PosName(Pos pos) {
  switch (pos) {
    case Pos::kNoun: return "NOUN";
    case Pos::kVerb: return "VERB";
    case Pos::kAdj: return "ADJ";
    case Pos::kAdv: return "ADV";
    case Pos::kPron: return "PRON";
    case Pos::kOther: return "OTHER";
  }
  return "OTHER";
}

bool IsKeptPos(Pos pos) { return pos != Pos::kOther; }

std::vector<Token> TokenizeAndTag(std::string_view text) {
  std::vector<Token> tokens;
  std::optional<Fine> prev;
  std::string prev_lower;
  for (RawPiece& piece : SplitPieces(FoldApostrophes(text))) {
    Token tok;
    Fine fine;
    std::string lower = AsciiLower(piece.text);
    if (piece.punctuation) {
      fine = Fine::kPunct;
      tok.punctuation = true;
    } else if (const auto* cands = TheLexicon().Find(lower)) {
      fine = Disambiguate(*cands, prev, prev_lower);
    } else {
      fine = TagUnknown(lower, prev, prev_lower);
    }
    tok.surface = std::move(piece.text);
    tok.pos = Coarse(fine);
    tokens.push_back(std::move(tok));
    prev = fine;
    prev_lower = std::move(lower);
  }
  return tokens;
}

std::vector<Token> FilterAndStem(std::vector<Token> tokens) {
  std::vector<Token> kept;
  kept.reserve(tokens.size());
  for (Token& tok : tokens) {
    if (tok.punctuation || !IsKeptPos(tok.pos)) continue;
    tok.stem = PorterStem(AsciiLower(tok.surface));
    if (tok.stem.empty()) continue;
    kept.push_back(std::move(tok));
  }
  return kept;
}

std::size_t CountKeptTokens(std::string_view sentence) {
  return FilterAndStem(TokenizeAndTag(sentence)).size();
}

AnalyzedPost AnalyzePost(const Post& post) {
  AnalyzedPost out;
  out.post_id = post.post_id;
  out.sentences.reserve(post.scored_sentences);
  std::size_t raw_position = 0;
  for (std::size_t s = 0; s < post.scored_sentences; ++s) {
    AnalyzedSentence sentence;
    for (Token& tok : TokenizeAndTag(post.sentences[s])) {
      if (tok.punctuation) continue;
      std::size_t position = raw_position++;
      ++sentence.raw_tokens;
      if (!IsKeptPos(tok.pos)) continue;
      std::string stem = PorterStem(AsciiLower(tok.surface));
      if (stem.empty()) continue;
      sentence.kept.push_back({std::move(stem), position});
    }
    out.sentences.push_back(std::move(sentence));
  }
  return out;
}

std::vector<AnalyzedPost> AnalyzeCorpus(const Corpus& corpus) {
  std::vector<AnalyzedPost> out;
  out.reserve(corpus.posts.size());
  for (const Post& post : corpus.posts) out.push_back(AnalyzePost(post));
  return out;
}

Vocabulary::Vocabulary(std::vector<std::string> stems,
                       std::vector<std::size_t> freqs)
    : stems_(std::move(stems)), freqs_(std::move(freqs)) {
  if (stems_.size() != freqs_.size()) {
    throw VocabularyError("stem and frequency lists differ in length");
  }
  index_.reserve(stems_.size());
  for (std::size_t i = 0; i < stems_.size(); ++i) {
    if (!index_.emplace(stems_[i], static_cast<WordId>(i)).second) {
      throw VocabularyError("duplicate stem '" + stems_[i] + "'");
    }
  }
}

std::optional<WordId> Vocabulary::Find(std::string_view stem) const {
  auto it = index_.find(std::string(stem));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::vector<WordId>> Vocabulary::SentenceIds(
    const AnalyzedPost& post) const {
  std::vector<std::vector<WordId>> out;
  out.reserve(post.sentences.size());
  for (const AnalyzedSentence& s : post.sentences) {
    std::vector<WordId> ids;
    for (const KeptToken& tok : s.kept) {
      if (auto id = Find(tok.stem)) ids.push_back(*id);
    }
    out.push_back(std::move(ids));
  }
  return out;
}

Vocabulary BuildVocabulary(std::span<const AnalyzedPost> posts,
                           std::size_t min_freq) {
  if (min_freq < 1) throw VocabularyError("min_freq must be >= 1");
  std::map<std::string, std::size_t> counts;
  for (const AnalyzedPost& post : posts) {
    for (const AnalyzedSentence& s : post.sentences) {
      for (const KeptToken& tok : s.kept) ++counts[tok.stem];
    }
  }
  std::vector<std::string> stems;
  std::vector<std::size_t> freqs;
  for (auto& [stem, count] : counts) {
    if (count < min_freq) continue;
    stems.push_back(stem);
    freqs.push_back(count);
  }
  if (stems.empty()) {
    throw VocabularyError("empty vocabulary: no stem reaches min_freq " +
                          std::to_string(min_freq));
  }
  return Vocabulary(std::move(stems), std::move(freqs));
}

Vocabulary BuildVocabulary(const Corpus& corpus, std::size_t min_freq) {
  auto analyzed = AnalyzeCorpus(corpus);
  return BuildVocabulary(analyzed, min_freq);
}

void WriteVocabulary(const Vocabulary& vocab, std::ostream& out) {
  for (WordId id = 0; id < vocab.size(); ++id) {
    out << vocab.stem(id) << '\t' << id << '\t' << vocab.freq(id) << '\n';
  }
}

Vocabulary ReadVocabulary(std::istream& in) {
  std::vector<std::string> stems;
  std::vector<std::size_t> freqs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string stem;
    std::size_t id = 0;
    std::size_t freq = 0;
    if (!std::getline(fields, stem, '\t') || !(fields >> id >> freq) ||
        id != stems.size()) {
      throw VocabularyError("malformed vocabulary line " +
                            std::to_string(line_no));
    }
    stems.push_back(std::move(stem));
    freqs.push_back(freq);
  }
  return Vocabulary(std::move(stems), std::move(freqs));
}

}  // namespace eap
