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

#ifndef EAP_PORTER_STEMMER_H_
#define EAP_PORTER_STEMMER_H_

#include <string>
#include <string_view>

namespace eap {

// The original Porter (1980) suffix-stripping algorithm. Input is expected to
// be lowercase ASCII; bytes outside a-z are treated as consonants, so UTF-8
// words pass through without being mangled. Words of length <= 2 are
// returned unchanged.
std::string PorterStem(std::string_view word);

}  // namespace eap

#endif  // EAP_PORTER_STEMMER_H_
