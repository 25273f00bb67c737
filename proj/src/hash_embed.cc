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

#include "eap/hash_embed.h"

#include <cstdint>
#include <ostream>
#include <stdexcept>

#include "eap/embeddings.h"
#include "eap/evalkit.h"

namespace eap {
namespace {

std::uint64_t Fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

std::vector<float> HashEmbedding(std::string_view sentence, std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("embedding dimension is zero");
  std::vector<float> v(dim, 0.0f);
  for (const std::string& tok : RougeTokenize(sentence)) {
    std::uint64_t h = Fnv1a(tok);
    v[h % dim] += (h >> 63) ? -1.0f : 1.0f;
  }
  bool zero = true;
  for (float x : v) zero = zero && x == 0.0f;
  if (zero) v[0] = 1.0f;
  return v;
}

std::size_t WriteHashEmbeddings(std::span<const Corpus> corpora,
                                std::size_t dim, std::ostream& out) {
  std::vector<SentenceKey> keys;
  std::vector<float> rows;
  for (const Corpus& c : corpora) {
    for (const Post& post : c.posts) {
      for (std::size_t s = 0; s < post.scored_sentences; ++s) {
        keys.push_back({post.post_id, static_cast<std::uint32_t>(s)});
        auto v = HashEmbedding(post.sentences[s], dim);
        rows.insert(rows.end(), v.begin(), v.end());
      }
    }
  }
  WriteEmbeddings(out, dim, keys, rows);
  return keys.size();
}

}  // namespace eap
