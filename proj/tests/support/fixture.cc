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

#include "support/fixture.h"

#include <fstream>
#include <sstream>
#include <unistd.h>

#include "eap/hash_embed.h"

namespace eap::testing {

std::filesystem::path FixtureDir() {
  return std::filesystem::path(EAP_FIXTURE_DIR) / "mini";
}

std::filesystem::path GoldenDir() { return EAP_GOLDEN_DIR; }

std::filesystem::path ScratchDir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() /
             ("eap_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

RunConfig MiniConfig(const std::filesystem::path& scratch) {
  const auto dir = FixtureDir();
  RunConfig c;
  c.corpora = {{dir / "train.jsonl", Split::kTrain},
               {dir / "validation.jsonl", Split::kValidation},
               {dir / "test.jsonl", Split::kTest}};
  c.intensity_lexicon = dir / "intensity.tsv";
  c.emolex = dir / "emolex.tsv";
  c.min_freq = 2;

  std::vector<Corpus> corpora;
  for (const CorpusInput& in : c.corpora) {
    corpora.push_back(LoadCorpus(in.path, in.split));
  }
  auto emb = scratch / "mini.bin";
  std::ofstream out(emb, std::ios::binary);
  WriteHashEmbeddings(corpora, 64, out);
  c.embeddings = emb;
  return c;
}

std::string ReadAll(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace eap::testing
