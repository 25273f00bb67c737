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

#include "eap/corpus.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>
#include <string>
#include <unordered_set>

#include "eap/textpipe.h"
#include "json.hpp"

namespace eap {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(std::size_t line_no, const std::string& what) {
  throw CorpusError("line " + std::to_string(line_no) + ": " + what);
}

Post ParseRecord(const json& record, std::size_t line_no) {
  if (!record.is_object()) Fail(line_no, "record is not a JSON object");
  Post post;

  auto id = record.find("post_id");
  if (id == record.end() || !id->is_string()) {
    Fail(line_no, "missing string field 'post_id'");
  }
  post.post_id = id->get<std::string>();

  auto sentences = record.find("sentences");
  if (sentences == record.end() || !sentences->is_array()) {
    Fail(line_no, "missing array field 'sentences'");
  }
  for (const json& s : *sentences) {
    if (!s.is_string()) Fail(line_no, "non-string sentence");
    post.sentences.push_back(s.get<std::string>());
  }

  auto gold = record.find("gold");
  if (gold != record.end()) {
    if (!gold->is_object()) Fail(line_no, "'gold' is not an object");
    for (const auto& [label, refs] : gold->items()) {
      auto emotion = ParseEmotion(label);
      if (!emotion) Fail(line_no, "unknown emotion label '" + label + "'");
      if (!refs.is_array()) Fail(line_no, "gold references must be a list");
      if (refs.size() > 2) {
        Fail(line_no, "more than two references for '" + label + "'");
      }
      for (const json& ref : refs) {
        if (!ref.is_array()) Fail(line_no, "reference must be a list of ints");
        std::set<std::size_t> indices;
        for (const json& idx : ref) {
          if (!idx.is_number_integer()) {
            Fail(line_no, "sentence index must be an integer");
          }
          auto v = idx.get<long long>();
          if (v < 0 || static_cast<std::size_t>(v) >= post.sentences.size()) {
            Fail(line_no, "index out of range: " + std::to_string(v) +
                              " (post has " +
                              std::to_string(post.sentences.size()) +
                              " sentences)");
          }
          indices.insert(static_cast<std::size_t>(v));
        }
        post.gold[*emotion].emplace_back(indices.begin(), indices.end());
      }
    }
  }
  return post;
}

void ApplyTokenCap(Post& post, std::size_t token_cap,
                   std::vector<TruncationRecord>& report) {
  std::size_t total = 0;
  std::size_t kept_tokens = 0;
  std::size_t kept = 0;
  bool open = true;
  for (const std::string& s : post.sentences) {
    std::size_t n = CountKeptTokens(s);
    total += n;
    if (open && total <= token_cap) {
      ++kept;
      kept_tokens = total;
    } else {
      open = false;
    }
  }
  post.scored_sentences = kept;
  if (kept < post.sentences.size()) {
    report.push_back({post.post_id, kept, post.sentences.size(), kept_tokens,
                      total});
  }
}

}  // namespace

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kValidation: return "validation";
    case Split::kTest: return "test";
  }
  return "unknown";
}

Split ParseSplit(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "validation" || name == "val" || name == "dev") {
    return Split::kValidation;
  }
  if (name == "test") return Split::kTest;
  throw std::invalid_argument("unknown split '" + std::string(name) + "'");
}

Corpus ParseCorpus(std::istream& in, Split split, std::size_t token_cap) {
  Corpus corpus;
  corpus.split = split;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (std::all_of(line.begin(), line.end(),
                    [](unsigned char c) { return std::isspace(c); })) {
      continue;
    }
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      Fail(line_no, std::string("malformed record: ") + e.what());
    }
    Post post = ParseRecord(record, line_no);
    if (!seen.insert(post.post_id).second) {
      Fail(line_no, "duplicate post_id '" + post.post_id + "'");
    }
    ApplyTokenCap(post, token_cap, corpus.truncated);
    corpus.posts.push_back(std::move(post));
  }
  return corpus;
}

Corpus LoadCorpus(const std::filesystem::path& path, Split split,
                  std::size_t token_cap) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot open corpus file " + path.string());
  try {
    return ParseCorpus(in, split, token_cap);
  } catch (const CorpusError& e) {
    throw CorpusError(path.string() + ": " + e.what());
  }
}

const std::vector<Reference>& GoldReferences(const Post& post, Emotion e) {
  return post.gold[e];
}

PerEmotion<bool> GoldEmotions(const Post& post) {
  PerEmotion<bool> out(false);
  for (Emotion e : kAllEmotions) out[e] = !post.gold[e].empty();
  return out;
}

std::string SerializePost(const Post& post) {
  json record;
  record["post_id"] = post.post_id;
  record["sentences"] = post.sentences;
  json gold = json::object();
  for (Emotion e : kAllEmotions) {
    if (post.gold[e].empty()) continue;
    gold[std::string(EmotionName(e))] = post.gold[e];
  }
  record["gold"] = std::move(gold);
  return record.dump();
}

}  // namespace eap
