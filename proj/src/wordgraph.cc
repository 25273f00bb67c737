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

#include "eap/wordgraph.h"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

namespace eap {

std::string_view WindowSpaceName(WindowSpace space) {
  return space == WindowSpace::kRaw ? "raw" : "filtered";
}

WindowSpace ParseWindowSpace(std::string_view name) {
  if (name == "filtered") return WindowSpace::kFiltered;
  if (name == "raw") return WindowSpace::kRaw;
  throw std::invalid_argument("unknown window space '" + std::string(name) +
                              "'");
}

CooccurrenceMatrix::CooccurrenceMatrix(std::size_t dim, std::size_t window)
    : dim_(dim), window_(window), row_sums_(dim, 0) {}

std::uint64_t CooccurrenceMatrix::Count(WordId i, WordId j) const {
  if (i == j) return 0;
  auto it = upper_.find(std::minmax(i, j));
  return it == upper_.end() ? 0 : it->second;
}

void CooccurrenceMatrix::Add(WordId i, WordId j, std::uint64_t n) {
  if (i == j || n == 0) return;
  upper_[std::minmax(i, j)] += n;
  row_sums_[i] += n;
  row_sums_[j] += n;
}

CooccurrenceMatrix CooccurrenceMatrix::WithoutWords(
    std::span<const bool> removed) const {
  CooccurrenceMatrix out(dim_, window_);
  for (const auto& [key, n] : upper_) {
    if (removed[key.first] || removed[key.second]) continue;
    out.Add(key.first, key.second, n);
  }
  return out;
}

void CountSequence(std::span<const Occurrence> sequence, std::size_t window,
                   CooccurrenceMatrix& counts) {
  for (std::size_t a = 0; a < sequence.size(); ++a) {
    for (std::size_t b = a + 1; b < sequence.size(); ++b) {
      if (sequence[b].position - sequence[a].position > window) break;
      counts.Add(sequence[a].id, sequence[b].id);
    }
  }
}

std::vector<Occurrence> PostOccurrences(const AnalyzedPost& post,
                                        const Vocabulary& vocab,
                                        WindowSpace space) {
  std::vector<Occurrence> out;
  std::size_t filtered_position = 0;
  for (const AnalyzedSentence& s : post.sentences) {
    for (const KeptToken& tok : s.kept) {
      std::size_t position = space == WindowSpace::kFiltered
                                 ? filtered_position
                                 : tok.raw_position;
      ++filtered_position;
      if (auto id = vocab.Find(tok.stem)) out.push_back({*id, position});
    }
  }
  return out;
}

CooccurrenceMatrix CountCooccurrences(std::span<const AnalyzedPost> posts,
                                      const Vocabulary& vocab,
                                      std::size_t window, WindowSpace space) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  CooccurrenceMatrix counts(vocab.size(), window);
  for (const AnalyzedPost& post : posts) {
    auto seq = PostOccurrences(post, vocab, space);
    CountSequence(seq, window, counts);
  }
  return counts;
}

double EdgeWeight(const CooccurrenceMatrix& counts, WordId i, WordId j) {
  if (i == j) throw std::invalid_argument("edge weight undefined for i == j");
  std::uint64_t c = counts.Count(i, j);
  if (c == 0) return 0.0;
  std::uint64_t denom = counts.RowSum(i) + counts.RowSum(j);
  return 2.0 * static_cast<double>(c) / static_cast<double>(denom);
}

double WordGraph::Weight(WordId i, WordId j) const {
  auto first = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
  auto last = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
  auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  return weights_[static_cast<std::size_t>(it - cols_.begin())];
}

WordGraph BuildGraph(const CooccurrenceMatrix& counts) {
  const std::size_t n = counts.dim();
  std::vector<std::uint64_t> degree(n, 0);
  for (const auto& [key, c] : counts.entries()) {
    ++degree[key.first];
    ++degree[key.second];
  }
  WordGraph g;
  g.row_ptr_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) g.row_ptr_[i + 1] = g.row_ptr_[i] + degree[i];
  const std::size_t nnz = g.row_ptr_[n];
  g.cols_.resize(nnz);
  g.weights_.resize(nnz);
  g.counts_.resize(nnz);
  std::vector<std::uint64_t> fill(g.row_ptr_.begin(), g.row_ptr_.end() - 1);
  // entries() iterates (i, j) in lexicographic order, so appending j to row i
  // and i to row j leaves every row sorted by column.
  for (const auto& [key, c] : counts.entries()) {
    auto [i, j] = key;
    double beta = EdgeWeight(counts, i, j);
    std::uint64_t pi = fill[i]++;
    g.cols_[pi] = j;
    g.weights_[pi] = beta;
    g.counts_[pi] = c;
    std::uint64_t pj = fill[j]++;
    g.cols_[pj] = i;
    g.weights_[pj] = beta;
    g.counts_[pj] = c;
  }
  g.weighted_degree_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double d = 0.0;
    for (std::uint64_t k = g.row_ptr_[i]; k < g.row_ptr_[i + 1]; ++k) {
      d += g.weights_[k];
    }
    g.weighted_degree_[i] = d;
  }
  return g;
}

void WriteGraph(const WordGraph& graph, const Vocabulary& vocab,
                std::ostream& out) {
  char buf[64];
  auto row_ptr = graph.row_ptr();
  auto cols = graph.cols();
  for (WordId i = 0; i < graph.num_vertices(); ++i) {
    for (std::uint64_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      WordId j = cols[k];
      if (j <= i) continue;
      std::snprintf(buf, sizeof(buf), "%.17g", graph.weights()[k]);
      out << vocab.stem(i) << '\t' << vocab.stem(j) << '\t'
          << graph.counts()[k] << '\t' << buf << '\n';
    }
  }
}

}  // namespace eap
