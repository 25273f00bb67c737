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

// Writes hashed bag-of-words sentence vectors in EAPV1 format. Useful for
// smoke runs without a neural sentence encoder.

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eap/corpus.h"
#include "eap/embeddings.h"
#include "eap/hash_embed.h"

int main(int argc, char** argv) {
  CLI::App app{"Hashed bag-of-words sentence vectors (EAPV1)"};
  std::vector<std::string> corpora;
  std::string out_path;
  std::size_t dim = 64;
  app.add_option("--corpus", corpora, "Corpus files")->required();
  app.add_option("--out", out_path, "Output .bin")->required();
  app.add_option("--dim", dim, "Vector dimension (default 64)")
      ->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);
  try {
    std::vector<eap::Corpus> loaded;
    for (const auto& path : corpora) {
      loaded.push_back(eap::LoadCorpus(path, eap::Split::kTrain));
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    std::size_t n = eap::WriteHashEmbeddings(loaded, dim, out);
    std::printf("%zu vectors of dimension %zu\n", n, dim);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "eap_hash_embed: %s\n", e.what());
    return 1;
  }
  return 0;
}
