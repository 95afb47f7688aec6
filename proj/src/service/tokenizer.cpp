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

#include "ged/tokenizer.hpp"

#include <cctype>

namespace ged {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

void split_word(std::string_view w, std::vector<std::string>& out) {
  std::size_t lo = 0;
  std::size_t hi = w.size();
  while (lo < hi && is_punct(w[lo])) out.emplace_back(1, w[lo++]);
  std::size_t tail = hi;
  while (tail > lo && is_punct(w[tail - 1])) --tail;
  if (tail > lo) out.emplace_back(w.substr(lo, tail - lo));
  for (std::size_t i = tail; i < hi; ++i) out.emplace_back(1, w[i]);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) split_word(text.substr(start, i - start), out);
  }
  return out;
}

}  // namespace ged
