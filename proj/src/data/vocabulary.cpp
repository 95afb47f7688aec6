// Copyright 2026 The ged Authors.
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

#include "ged/vocabulary.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "ged/error.hpp"
#include "ged/model_config.hpp"

namespace ged {

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

Vocabulary::Vocabulary() : tokens_{std::string(kPadToken), std::string(kUnkToken)} { index(); }

void Vocabulary::index() {
  static_assert(kPaddingId == 0 && kUnknownId == 1);
  ids_.clear();
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!ids_.emplace(tokens_[i], i).second) {
      throw VocabularyError("duplicate vocabulary entry '" + tokens_[i] + "'");
    }
  }
}

Vocabulary Vocabulary::build(const Corpus& corpus, std::size_t min_count) {
  std::map<std::string, std::size_t> counts;
  std::size_t total = 0;
  for (const auto& s : corpus) {
    for (const auto& t : s.tokens) {
      ++counts[lowercase(t)];
      ++total;
    }
  }
  if (total == 0) throw DataError("cannot build a vocabulary from an empty corpus");

  std::vector<std::pair<std::string, std::size_t>> kept;
  for (auto& [tok, n] : counts) {
    if (n >= min_count && tok != kPadToken && tok != kUnkToken) kept.emplace_back(tok, n);
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  Vocabulary v;
  for (auto& [tok, n] : kept) v.tokens_.push_back(tok);
  v.index();
  return v;
}

Vocabulary Vocabulary::from_tokens(std::vector<std::string> tokens) {
  if (tokens.size() < 2 || tokens[kPaddingId] != kPadToken || tokens[kUnknownId] != kUnkToken) {
    throw VocabularyError("vocabulary must start with the reserved <pad> and <unk> entries");
  }
  Vocabulary v;
  v.tokens_ = std::move(tokens);
  v.index();
  return v;
}

std::size_t Vocabulary::id(std::string_view token) const {
  auto it = ids_.find(lowercase(token));
  return it == ids_.end() ? kUnknownId : it->second;
}

bool Vocabulary::contains(std::string_view token) const {
  return ids_.count(lowercase(token)) != 0;
}

std::vector<std::size_t> Vocabulary::encode(const std::vector<std::string>& tokens) const {
  std::vector<std::size_t> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(id(t));
  return out;
}

void Vocabulary::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  for (const auto& t : tokens_) out << t << '\n';
}

Vocabulary Vocabulary::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    tokens.push_back(line);
  }
  return from_tokens(std::move(tokens));
}

}  // namespace ged
