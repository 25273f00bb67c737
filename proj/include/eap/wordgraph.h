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

#ifndef EAP_WORDGRAPH_H_
#define EAP_WORDGRAPH_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "eap/textpipe.h"

namespace eap {

// Distance measure for the co-occurrence window.
enum class WindowSpace {
  kFiltered,  // intervening kept (POS-filtered) tokens
  kRaw,       // intervening non-punctuation tokens of the original text
};

std::string_view WindowSpaceName(WindowSpace space);
WindowSpace ParseWindowSpace(std::string_view name);

inline constexpr std::size_t kDefaultWindow = 10;

// Sparse symmetric count matrix with a zero diagonal. Only the upper
// triangle is stored.
class CooccurrenceMatrix {
 public:
  CooccurrenceMatrix() = default;
  CooccurrenceMatrix(std::size_t dim, std::size_t window);

  std::size_t dim() const { return dim_; }
  std::size_t window() const { return window_; }

  std::uint64_t Count(WordId i, WordId j) const;
  // Adds `n` to both C_ij and C_ji. i == j is ignored.
  void Add(WordId i, WordId j, std::uint64_t n = 1);
  // sum_k C_ik
  std::uint64_t RowSum(WordId i) const { return row_sums_[i]; }

  // Upper-triangle entries (i < j) in (i, j) order.
  const std::map<std::pair<WordId, WordId>, std::uint64_t>& entries() const {
    return upper_;
  }

  // Copy with every row/column whose mask entry is true zeroed out.
  CooccurrenceMatrix WithoutWords(std::span<const bool> removed) const;

  friend bool operator==(const CooccurrenceMatrix& a,
                         const CooccurrenceMatrix& b) {
    return a.dim_ == b.dim_ && a.upper_ == b.upper_;
  }

 private:
  std::size_t dim_ = 0;
  std::size_t window_ = 0;
  std::map<std::pair<WordId, WordId>, std::uint64_t> upper_;
  std::vector<std::uint64_t> row_sums_;
};

// One in-vocabulary occurrence: word id plus its position in the chosen
// window space.
struct Occurrence {
  WordId id;
  std::size_t position;
};

// Every unordered pair of distinct ids whose positions have fewer than
// `window` tokens between them (position difference <= window) adds one to C.
void CountSequence(std::span<const Occurrence> sequence, std::size_t window,
                   CooccurrenceMatrix& counts);

// Occurrence stream of one post in the chosen space. In filtered space the
// position is the index among all kept tokens, in-vocabulary or not.
std::vector<Occurrence> PostOccurrences(const AnalyzedPost& post,
                                        const Vocabulary& vocab,
                                        WindowSpace space);

CooccurrenceMatrix CountCooccurrences(std::span<const AnalyzedPost> posts,
                                      const Vocabulary& vocab,
                                      std::size_t window,
                                      WindowSpace space = WindowSpace::kFiltered);

// beta(i, j) = 2 C_ij / sum_k (C_ik + C_jk); 0 when C_ij == 0.
// Throws std::invalid_argument when i == j.
double EdgeWeight(const CooccurrenceMatrix& counts, WordId i, WordId j);

// Undirected weighted graph over the vocabulary stored as a symmetric CSR
// matrix of edge weights. Isolated vertices are kept.
class WordGraph {
 public:
  WordGraph() = default;

  std::size_t num_vertices() const { return row_ptr_.empty() ? 0 : row_ptr_.size() - 1; }
  std::size_t num_edges() const { return cols_.size() / 2; }

  std::span<const std::uint64_t> row_ptr() const { return row_ptr_; }
  std::span<const std::uint32_t> cols() const { return cols_; }
  std::span<const double> weights() const { return weights_; }
  std::span<const std::uint64_t> counts() const { return counts_; }

  // sum_j beta(i, j), the normalizer of row i of the transition matrix.
  double WeightedDegree(WordId i) const { return weighted_degree_[i]; }
  std::span<const double> weighted_degrees() const { return weighted_degree_; }

  // Edge weight, 0 when there is no edge.
  double Weight(WordId i, WordId j) const;

  friend WordGraph BuildGraph(const CooccurrenceMatrix& counts);

 private:
  std::vector<std::uint64_t> row_ptr_;
  std::vector<std::uint32_t> cols_;
  std::vector<double> weights_;
  std::vector<std::uint64_t> counts_;
  std::vector<double> weighted_degree_;
};

WordGraph BuildGraph(const CooccurrenceMatrix& counts);

// TSV: stem_i \t stem_j \t count \t beta, one line per undirected edge (i < j).
void WriteGraph(const WordGraph& graph, const Vocabulary& vocab,
                std::ostream& out);

}  // namespace eap

#endif  // EAP_WORDGRAPH_H_
