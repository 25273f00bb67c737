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

#ifndef EAP_HASH_EMBED_H_
#define EAP_HASH_EMBED_H_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "eap/corpus.h"

namespace eap {

// Signed feature hashing of lowercased word tokens into `dim` buckets.
// Deterministic across platforms. Sentences without words get a fixed
// nonzero vector so they stay valid for cosine.
std::vector<float> HashEmbedding(std::string_view sentence, std::size_t dim);

// One vector per scored sentence of every post, in corpus order. Returns
// the number of records written.
std::size_t WriteHashEmbeddings(std::span<const Corpus> corpora,
                                std::size_t dim, std::ostream& out);

}  // namespace eap

#endif  // EAP_HASH_EMBED_H_
