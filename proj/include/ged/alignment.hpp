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

// Token-level Levenshtein alignment of a source sentence against a system's
// corrected output, turning proposed corrections into detection labels.

#include <string>
#include <vector>

#include "ged/corpus.hpp"

namespace ged {

enum class EditOp { kMatch, kSubstitute, kDelete, kInsert };

struct Edit {
  EditOp op;
  std::size_t source;     // source index (insertions: the source index after the gap)
  std::size_t corrected;  // corrected index (deletions: the corrected index after the gap)
};

/// Minimum-cost edit script (unit costs, match free) in left-to-right order.
/// The backtrace runs from the end of both sequences and at each cell takes
/// the first optimal move in the order match, substitute, delete, insert.
std::vector<Edit> edit_script(const std::vector<std::string>& source,
                              const std::vector<std::string>& corrected);

/// Labels a source token 1 when the canonical script substitutes or deletes
/// it, or inserts corrected tokens directly before it. Insertions after the
/// last source token label the last token. Throws ContractError on an empty
/// source.
LabeledSentence align_correction(const std::vector<std::string>& source,
                                 const std::vector<std::string>& corrected);

/// Source-side labels implied by an edit script over a source of length n.
std::vector<int> labels_from_script(const std::vector<Edit>& script, std::size_t n);

}  // namespace ged
