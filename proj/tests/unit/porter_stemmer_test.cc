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

#include <gtest/gtest.h>

#include <fstream>
#include <string>

#include "support/fixture.h"

namespace eap {
namespace {

TEST(PorterStemmerTest, WorkedExamples) {
  EXPECT_EQ(PorterStem("running"), "run");
  EXPECT_EQ(PorterStem("vaccinated"), "vaccin");
  EXPECT_EQ(PorterStem("vaccination"), "vaccin");
  EXPECT_EQ(PorterStem("outraged"), "outrag");
  EXPECT_EQ(PorterStem("caresses"), "caress");
  EXPECT_EQ(PorterStem("ponies"), "poni");
  EXPECT_EQ(PorterStem("generalizations"), "gener");
}

TEST(PorterStemmerTest, ShortWordsUnchanged) {
  EXPECT_EQ(PorterStem("is"), "is");
  EXPECT_EQ(PorterStem("a"), "a");
  EXPECT_EQ(PorterStem(""), "");
}

TEST(PorterStemmerTest, Idempotent) {
  for (const char* w : {"running", "happiness", "relational", "ties"}) {
    std::string once = PorterStem(w);
    EXPECT_EQ(PorterStem(PorterStem(once)), PorterStem(once)) << w;
  }
}

// Reference stems produced by an independent implementation of the
// original algorithm.
TEST(PorterStemmerTest, MatchesGoldenList) {
  std::ifstream in(testing::GoldenDir() / "porter_golden.tsv");
  ASSERT_TRUE(in) << "golden file missing";
  std::string line;
  std::size_t checked = 0, mismatches = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    ASSERT_NE(tab, std::string::npos);
    std::string word = line.substr(0, tab), stem = line.substr(tab + 1);
    ++checked;
    if (PorterStem(word) != stem) {
      ++mismatches;
      ADD_FAILURE() << word << ": got " << PorterStem(word) << ", want " << stem;
    }
  }
  EXPECT_GT(checked, 2000u);
  EXPECT_EQ(mismatches, 0u);
}

}  // namespace
}  // namespace eap
