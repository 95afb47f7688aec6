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

#include <string>
#include <string_view>
#include <vector>

namespace ged {

/// Raw-text tokenizer for the inference service. Splits on ASCII whitespace,
/// then detaches leading and trailing ASCII punctuation as one-character
/// tokens. Inner punctuation ("don't", "e.g") stays attached. Case is kept;
/// the vocabulary lowercases on lookup.
std::vector<std::string> tokenize(std::string_view text);

}  // namespace ged
