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

#ifndef EAP_TESTS_SUPPORT_ORACLES_H_
#define EAP_TESTS_SUPPORT_ORACLES_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "eap/wordgraph.h"

namespace eap::testing {

using DenseMatrix = std::vector<std::vector<double>>;

// Solves (I - d T^T - d j a^T) R = (1 - d) j by Gaussian elimination with
// partial pivoting, where T is `weights` row-normalized and a marks rows
// with no weight.
std::vector<double> DensePageRank(const DenseMatrix& weights,
                                  const std::vector<double>& jump, double d);

// Edge weights 2 C_ij / (rowsum_i + rowsum_j) from a dense count matrix.
DenseMatrix DenseEdgeWeights(const std::vector<std::vector<std::uint64_t>>& c);

// All position pairs (i < j) with fewer than `window` positions between
// them, distinct ids only.
std::map<std::pair<WordId, WordId>, std::uint64_t> BruteForceCooccurrence(
    const std::vector<Occurrence>& seq, std::size_t window);

// Exhaustive multiset intersection of n-gram lists.
double BruteRougeNF1(const std::vector<std::string>& cand,
                     const std::vector<std::string>& ref, std::size_t n);
// Full-table LCS.
double BruteRougeLF1(const std::vector<std::string>& cand,
                     const std::vector<std::string>& ref);

// Symmetric random counts; density in (0, 1].
std::vector<std::vector<std::uint64_t>> RandomCounts(std::size_t n,
                                                     double density,
                                                     std::mt19937_64& rng);
CooccurrenceMatrix ToMatrix(const std::vector<std::vector<std::uint64_t>>& c);

std::vector<double> RandomDistribution(std::size_t n, std::mt19937_64& rng);

}  // namespace eap::testing

#endif  // EAP_TESTS_SUPPORT_ORACLES_H_
