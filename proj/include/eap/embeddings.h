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

#ifndef EAP_EMBEDDINGS_H_
#define EAP_EMBEDDINGS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "eap/corpus.h"

namespace eap {

struct SentenceKey {
  std::string post_id;
  std::uint32_t sentence_index = 0;

  friend bool operator==(const SentenceKey&, const SentenceKey&) = default;
};

struct SentenceKeyHash {
  std::size_t operator()(const SentenceKey& k) const {
    return std::hash<std::string>{}(k.post_id) * 1000003u ^ k.sentence_index;
  }
};

class EmbeddingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unit-norm sentence vectors in one contiguous row-major block.
//
// File layout (little-endian):
//   "EAPV1"  u32 dim  u64 count
//   count x { u16 post_id_len, post_id bytes, u32 sentence_index,
//             dim x f32 }
class EmbeddingStore {
 public:
  EmbeddingStore() = default;
  explicit EmbeddingStore(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return keys_.size(); }

  // Normalizes `v` before storing. Throws on duplicate key, dimension
  // mismatch or a zero vector.
  void Add(SentenceKey key, std::span<const float> v);

  std::optional<std::span<const float>> Find(const SentenceKey& key) const;
  std::span<const float> Row(std::size_t row) const {
    return {data_.data() + row * dim_, dim_};
  }
  const SentenceKey& Key(std::size_t row) const { return keys_[row]; }
  std::optional<std::size_t> RowOf(const SentenceKey& key) const;

  // Dot product of the two stored unit vectors. Throws on a missing key.
  double Cosine(const SentenceKey& a, const SentenceKey& b) const;

  // Throws naming the first (post_id, index) with no vector, over the
  // scored sentences of every post.
  void CheckCovers(const Corpus& corpus) const;

 private:
  std::size_t dim_ = 0;
  std::vector<float> data_;
  std::vector<SentenceKey> keys_;
  std::unordered_map<SentenceKey, std::size_t, SentenceKeyHash> index_;
};

EmbeddingStore ReadEmbeddings(std::istream& in);
EmbeddingStore LoadEmbeddings(const std::filesystem::path& path);

// Writes vectors as given (no renormalization).
void WriteEmbeddings(std::ostream& out, std::size_t dim,
                     std::span<const SentenceKey> keys,
                     std::span<const float> rows);

}  // namespace eap

#endif  // EAP_EMBEDDINGS_H_
