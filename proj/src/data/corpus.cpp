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

#include "ged/corpus.hpp"

#include "ged/error.hpp"

namespace ged {

void LabeledSentence::validate() const {
  if (tokens.size() != labels.size()) {
    throw LabelError(std::to_string(tokens.size()) + " tokens but " +
                     std::to_string(labels.size()) + " labels");
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != kCorrect && labels[i] != kIncorrect) {
      throw LabelError("label " + std::to_string(labels[i]) + " at token " + std::to_string(i) +
                       " is not 0 or 1");
    }
  }
}

LabeledSentence spans_to_labels(const SpanAnnotation& a) {
  const std::size_t n = a.tokens.size();
  LabeledSentence out{a.tokens, std::vector<int>(n, kCorrect)};
  for (const Span& s : a.spans) {
    const std::string where = "(" + std::to_string(s.start) + "," + std::to_string(s.end) + ")";
    if (s.start > s.end || s.end > n) {
      throw AnnotationError("span " + where + " out of bounds for " + std::to_string(n) +
                            " tokens");
    }
    if (s.start == s.end) {
      if (n == 0) throw AnnotationError("span " + where + " on an empty sentence");
      out.labels[s.start < n ? s.start : n - 1] = kIncorrect;
      continue;
    }
    for (std::size_t i = s.start; i < s.end; ++i) out.labels[i] = kIncorrect;
  }
  return out;
}

}  // namespace ged
