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

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ged/corpus.hpp"

namespace ged {

/// ASCII lowercasing; bytes >= 0x80 (UTF-8 sequences) pass through unchanged.
std::string lowercase(std::string_view s);

/// Token to dense id map. Id 0 is the padding token and id 1 the unknown
/// token; every other entry is a lowercased training token.
class Vocabulary {
 public:
  static constexpr std::string_view kPadToken = "<pad>";
  static constexpr std::string_view kUnkToken = "<unk>";

  /// Only the reserved entries.
  Vocabulary();

  /// Counts lowercased tokens; tokens seen fewer than min_count times fall
  /// back to unk. Ids after the reserved ones follow descending count, ties
  /// broken lexicographically. Throws DataError for a corpus with no tokens.
  static Vocabulary build(const Corpus& corpus, std::size_t min_count = 2);

  /// Rebuilds from tokens listed in id order (reserved entries first).
  static Vocabulary from_tokens(std::vector<std::string> tokens);

  std::size_t size() const { return tokens_.size(); }
  /// Lowercases, then looks up; unknown strings map to the unk id.
  std::size_t id(std::string_view token) const;
  bool contains(std::string_view token) const;
  const std::string& token(std::size_t id) const { return tokens_.at(id); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  std::vector<std::size_t> encode(const std::vector<std::string>& tokens) const;

  /// One token per line in id order.
  void save(const std::string& path) const;
  static Vocabulary load(const std::string& path);

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.tokens_ == b.tokens_; }

 private:
  void index();

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> ids_;
};

}  // namespace ged
