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

#ifndef EAP_TESTS_SUPPORT_FIXTURE_H_
#define EAP_TESTS_SUPPORT_FIXTURE_H_

#include <filesystem>
#include <string>

#include "eap/pipeline.h"

namespace eap::testing {

std::filesystem::path FixtureDir();   // tests/fixtures/mini
std::filesystem::path GoldenDir();    // tests/golden

// Fresh empty directory under the system temp dir.
std::filesystem::path ScratchDir(const std::string& name);

// Config for the 20-post fixture. Writes hashed embeddings for it into
// `scratch` and points the config at them.
RunConfig MiniConfig(const std::filesystem::path& scratch);

std::string ReadAll(const std::filesystem::path& path);

}  // namespace eap::testing

#endif  // EAP_TESTS_SUPPORT_FIXTURE_H_
