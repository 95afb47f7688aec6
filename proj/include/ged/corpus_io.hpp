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

// File formats for corpora and annotations.
//
// Labeled TSV: one token per line, a TAB, then `c` (correct) or `i`
// (incorrect). A blank line ends a sentence. Input may use CRLF; output is LF.
//
// Span file: one sentence per line, space-separated tokens, a TAB, then
// comma-separated `start:end` token offsets (end exclusive). The TAB and span
// list may be omitted for an error-free sentence.
//
// Plain sentences: one sentence per line, whitespace-separated tokens.

#include <iosfwd>
#include <string>
#include <vector>

#include "ged/corpus.hpp"

namespace ged {

Corpus read_tsv(std::istream& in, const std::string& source = "<tsv>");
Corpus read_tsv(const std::string& path);
void write_tsv(std::ostream& out, const Corpus& corpus);
void write_tsv(const std::string& path, const Corpus& corpus);

std::vector<SpanAnnotation> read_spans(std::istream& in, const std::string& source = "<spans>");
std::vector<SpanAnnotation> read_spans(const std::string& path);

/// Blank lines are kept as empty sentences so line numbers stay aligned.
std::vector<std::vector<std::string>> read_sentences(std::istream& in);
std::vector<std::vector<std::string>> read_sentences(const std::string& path);

std::vector<std::string> split_whitespace(const std::string& line);

}  // namespace ged
