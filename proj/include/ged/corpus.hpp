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

// Labeled sentences, span annotations and their conversion to token labels.

#include <cstddef>
#include <string>
#include <vector>

namespace ged {

inline constexpr int kCorrect = 0;
inline constexpr int kIncorrect = 1;

struct LabeledSentence {
  std::vector<std::string> tokens;
  std::vector<int> labels;  // 0 = correct, 1 = incorrect

  /// Throws LabelError when lengths differ or a label is not 0/1.
  void validate() const;

  friend bool operator==(const LabeledSentence&, const LabeledSentence&) = default;
};

using Corpus = std::vector<LabeledSentence>;

/// Error span over token offsets, end exclusive. start == end marks a missing
/// word before token `start`.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const Span&, const Span&) = default;
};

struct SpanAnnotation {
  std::vector<std::string> tokens;
  std::vector<Span> spans;
};

/// Tokens inside any span are incorrect. A zero-length span at k labels token
/// k (the token after the gap); at k == tokens.size() it labels the final
/// token. Overlapping spans union. Throws AnnotationError for spans out of
/// bounds, with start > end, or on an empty sentence with spans.
LabeledSentence spans_to_labels(const SpanAnnotation& a);

}  // namespace ged
