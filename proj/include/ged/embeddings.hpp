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
#include <iosfwd>
#include <string>
#include <vector>

#include "ged/tensor.hpp"
#include "ged/vocabulary.hpp"

namespace ged {

struct PretrainedReport {
  std::size_t rows_loaded = 0;  // distinct vocabulary rows overwritten
  std::size_t lines_read = 0;
  double coverage = 0.0;  // rows_loaded / vocabulary size
  std::vector<std::string> warnings;
};

/// Reads word2vec-style text vectors (optional "count dim" header, then
/// "token v1 ... vD" per line) into the rows of `table` for tokens present in
/// the vocabulary; other rows are left untouched. File tokens are lowercased
/// like the vocabulary, and when two lines map to the same row the later one
/// wins with a warning. Throws ConfigError when the vector width differs from
/// the table and ParseError (with line number) for malformed lines.
PretrainedReport load_pretrained(std::istream& in, const Vocabulary& vocab, Tensor& table,
                                 const std::string& source = "<embeddings>");
PretrainedReport load_pretrained(const std::string& path, const Vocabulary& vocab, Tensor& table);

}  // namespace ged
