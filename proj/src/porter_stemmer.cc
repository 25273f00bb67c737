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

#include "eap/porter_stemmer.h"

#include <array>
#include <utility>

namespace eap {
namespace {

class Stemmer {
 public:
  explicit Stemmer(std::string_view word) : b_(word) {}

  std::string Run() && {
    if (b_.size() <= 2) return std::move(b_);
    Step1a();
    Step1b();
    Step1c();
    Step2();
    Step3();
    Step4();
    Step5a();
    Step5b();
    return std::move(b_);
  }

 private:
  struct Rule {
    std::string_view suffix;
    std::string_view replacement;
  };

  // Consonant test on b_[i] per Porter's definition (y after a consonant is
  // a vowel).
  bool IsConsonant(std::size_t i) const {
    switch (b_[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !IsConsonant(i - 1);
      default:
        return true;
    }
  }

  // m in [C](VC)^m[V] over the first `len` characters.
  int Measure(std::size_t len) const {
    int m = 0;
    std::size_t i = 0;
    while (i < len && IsConsonant(i)) ++i;
    while (i < len) {
      while (i < len && !IsConsonant(i)) ++i;
      if (i >= len) break;
      while (i < len && IsConsonant(i)) ++i;
      ++m;
    }
    return m;
  }

  bool ContainsVowel(std::size_t len) const {
    for (std::size_t i = 0; i < len; ++i) {
      if (!IsConsonant(i)) return true;
    }
    return false;
  }

  bool EndsDoubleConsonant(std::size_t len) const {
    return len >= 2 && b_[len - 1] == b_[len - 2] && IsConsonant(len - 1);
  }

  // *o: stem ends consonant-vowel-consonant, last consonant not w, x or y.
  bool EndsCvc(std::size_t len) const {
    if (len < 3) return false;
    if (!IsConsonant(len - 3) || IsConsonant(len - 2) || !IsConsonant(len - 1)) {
      return false;
    }
    char c = b_[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool EndsWith(std::string_view s) const {
    return b_.size() >= s.size() &&
           std::string_view(b_).substr(b_.size() - s.size()) == s;
  }

  void ReplaceSuffix(std::size_t suffix_len, std::string_view replacement) {
    b_.resize(b_.size() - suffix_len);
    b_.append(replacement);
  }

  void Step1a() {
    if (EndsWith("sses")) {
      ReplaceSuffix(4, "ss");
    } else if (EndsWith("ies")) {
      ReplaceSuffix(3, "i");
    } else if (EndsWith("ss")) {
      // unchanged
    } else if (EndsWith("s")) {
      ReplaceSuffix(1, "");
    }
  }

  void Step1b() {
    bool cleanup = false;
    if (EndsWith("eed")) {
      if (Measure(b_.size() - 3) > 0) ReplaceSuffix(3, "ee");
    } else if (EndsWith("ed")) {
      if (ContainsVowel(b_.size() - 2)) {
        ReplaceSuffix(2, "");
        cleanup = true;
      }
    } else if (EndsWith("ing")) {
      if (ContainsVowel(b_.size() - 3)) {
        ReplaceSuffix(3, "");
        cleanup = true;
      }
    }
    if (!cleanup) return;

    if (EndsWith("at") || EndsWith("bl") || EndsWith("iz")) {
      b_.push_back('e');
    } else if (EndsDoubleConsonant(b_.size())) {
      char c = b_.back();
      if (c != 'l' && c != 's' && c != 'z') b_.pop_back();
    } else if (Measure(b_.size()) == 1 && EndsCvc(b_.size())) {
      b_.push_back('e');
    }
  }

  void Step1c() {
    if (EndsWith("y") && ContainsVowel(b_.size() - 1)) {
      b_.back() = 'i';
    }
  }

  void Step2() {
    static constexpr std::array<Rule, 20> kRules = {{
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},
        {"anci", "ance"},   {"izer", "ize"},    {"abli", "able"},
        {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},
        {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
        {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},
        {"iviti", "ive"},   {"biliti", "ble"},
    }};
    ApplyLongestMatch(kRules, 0);
  }

  void Step3() {
    static constexpr std::array<Rule, 7> kRules = {{
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""},
    }};
    ApplyLongestMatch(kRules, 0);
  }

  void Step4() {
    static constexpr std::array<std::string_view, 19> kSuffixes = {
        "al",  "ance", "ence", "er",  "ic",  "able", "ible",
        "ant", "ement", "ment", "ent", "ion", "ou",  "ism",
        "ate", "iti",  "ous",  "ive", "ize",
    };
    std::string_view best;
    for (std::string_view s : kSuffixes) {
      if (s.size() > best.size() && EndsWith(s)) best = s;
    }
    if (best.empty()) return;
    std::size_t stem_len = b_.size() - best.size();
    if (Measure(stem_len) <= 1) return;
    if (best == "ion") {
      if (stem_len == 0) return;
      char c = b_[stem_len - 1];
      if (c != 's' && c != 't') return;
    }
    b_.resize(stem_len);
  }

  void Step5a() {
    if (!EndsWith("e")) return;
    std::size_t stem_len = b_.size() - 1;
    int m = Measure(stem_len);
    if (m > 1 || (m == 1 && !EndsCvc(stem_len))) b_.pop_back();
  }

  void Step5b() {
    if (Measure(b_.size()) > 1 && EndsDoubleConsonant(b_.size()) &&
        b_.back() == 'l') {
      b_.pop_back();
    }
  }

  template <std::size_t N>
  void ApplyLongestMatch(const std::array<Rule, N>& rules, int min_measure) {
    const Rule* best = nullptr;
    for (const Rule& rule : rules) {
      if (EndsWith(rule.suffix) &&
          (best == nullptr || rule.suffix.size() > best->suffix.size())) {
        best = &rule;
      }
    }
    if (best == nullptr) return;
    std::size_t stem_len = b_.size() - best->suffix.size();
    if (Measure(stem_len) > min_measure) {
      ReplaceSuffix(best->suffix.size(), best->replacement);
    }
  }

  std::string b_;
};

}  // namespace

std::string PorterStem(std::string_view word) {
  return Stemmer(word).Run();
}

}  // namespace eap
