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

#include "eap/embeddings.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "eap/kernels.h"

namespace eap {
namespace {

constexpr char kMagic[5] = {'E', 'A', 'P', 'V', '1'};

static_assert(std::endian::native == std::endian::little,
              "EAPV1 I/O assumes a little-endian host");

template <typename T>
T ReadPod(std::istream& in, const char* what) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) {
    throw EmbeddingError(std::string("truncated embedding file while reading ") +
                         what);
  }
  return v;
}

template <typename T>
void WritePod(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

std::string Describe(const SentenceKey& key) {
  return "(" + key.post_id + ", " + std::to_string(key.sentence_index) + ")";
}

}  // namespace

void EmbeddingStore::Add(SentenceKey key, std::span<const float> v) {
  if (v.size() != dim_) {
    throw EmbeddingError("dimension mismatch for " + Describe(key) + ": got " +
                         std::to_string(v.size()) + ", expected " +
                         std::to_string(dim_));
  }
  double norm2 = 0.0;
  for (float x : v) norm2 += static_cast<double>(x) * x;
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    throw EmbeddingError("degenerate embedding for " + Describe(key));
  }
  if (index_.contains(key)) {
    throw EmbeddingError("duplicate embedding key " + Describe(key));
  }
  const double inv = 1.0 / std::sqrt(norm2);
  const std::size_t row = keys_.size();
  data_.resize(data_.size() + dim_);
  float* dst = data_.data() + row * dim_;
  for (std::size_t i = 0; i < dim_; ++i) {
    dst[i] = static_cast<float>(v[i] * inv);
  }
  index_.emplace(key, row);
  keys_.push_back(std::move(key));
}

std::optional<std::size_t> EmbeddingStore::RowOf(const SentenceKey& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::span<const float>> EmbeddingStore::Find(
    const SentenceKey& key) const {
  auto row = RowOf(key);
  if (!row) return std::nullopt;
  return Row(*row);
}

double EmbeddingStore::Cosine(const SentenceKey& a, const SentenceKey& b) const {
  auto va = Find(a);
  if (!va) throw EmbeddingError("missing embedding for " + Describe(a));
  auto vb = Find(b);
  if (!vb) throw EmbeddingError("missing embedding for " + Describe(b));
  return kernels::Dot(*va, *vb);
}

void EmbeddingStore::CheckCovers(const Corpus& corpus) const {
  for (const Post& post : corpus.posts) {
    for (std::size_t s = 0; s < post.scored_sentences; ++s) {
      SentenceKey key{post.post_id, static_cast<std::uint32_t>(s)};
      if (!index_.contains(key)) {
        throw EmbeddingError("missing embedding for " + Describe(key));
      }
    }
  }
}

EmbeddingStore ReadEmbeddings(std::istream& in) {
  char magic[5];
  if (!in.read(magic, sizeof(magic)) ||
      std::memcmp(magic, kMagic, sizeof(magic)) != 0) {
    throw EmbeddingError("not an EAPV1 embedding file");
  }
  const auto dim = ReadPod<std::uint32_t>(in, "dim");
  const auto count = ReadPod<std::uint64_t>(in, "count");
  if (dim == 0) throw EmbeddingError("embedding dimension is zero");
  EmbeddingStore store(dim);
  std::vector<float> buf(dim);
  for (std::uint64_t r = 0; r < count; ++r) {
    const auto len = ReadPod<std::uint16_t>(in, "post_id length");
    std::string post_id(len, '\0');
    if (len > 0 && !in.read(post_id.data(), len)) {
      throw EmbeddingError("truncated embedding file while reading post_id");
    }
    const auto index = ReadPod<std::uint32_t>(in, "sentence index");
    if (!in.read(reinterpret_cast<char*>(buf.data()),
                 static_cast<std::streamsize>(dim * sizeof(float)))) {
      throw EmbeddingError("truncated embedding file while reading vector");
    }
    store.Add({std::move(post_id), index}, buf);
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw EmbeddingError("trailing bytes after " + std::to_string(count) +
                         " records (dimension mismatch?)");
  }
  return store;
}

EmbeddingStore LoadEmbeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw EmbeddingError("cannot open embeddings " + path.string());
  return ReadEmbeddings(in);
}

void WriteEmbeddings(std::ostream& out, std::size_t dim,
                     std::span<const SentenceKey> keys,
                     std::span<const float> rows) {
  if (rows.size() != keys.size() * dim) {
    throw EmbeddingError("row block does not match key count x dim");
  }
  out.write(kMagic, sizeof(kMagic));
  WritePod<std::uint32_t>(out, static_cast<std::uint32_t>(dim));
  WritePod<std::uint64_t>(out, keys.size());
  for (std::size_t r = 0; r < keys.size(); ++r) {
    const std::string& id = keys[r].post_id;
    if (id.size() > 0xFFFF) throw EmbeddingError("post_id too long");
    WritePod<std::uint16_t>(out, static_cast<std::uint16_t>(id.size()));
    out.write(id.data(), static_cast<std::streamsize>(id.size()));
    WritePod<std::uint32_t>(out, keys[r].sentence_index);
    out.write(reinterpret_cast<const char*>(rows.data() + r * dim),
              static_cast<std::streamsize>(dim * sizeof(float)));
  }
}

}  // namespace eap
