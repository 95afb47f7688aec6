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

// Template-grammar generator for synthetic learner-error corpora.
//
// Templates are space-separated symbols expanded left to right:
//   SUBJ   subject noun phrase or pronoun; fixes the agreement number
//   VERB   present-tense verb agreeing with the latest SUBJ
//   BE     is/are agreeing with the latest SUBJ
//   OBJ    determiner, optional adjective, noun (random number)
//   PP     preposition + OBJ
//   ADV    frequency adverb
//   CMP    comparative adjective
//   EXIST  "there" + is/are + OBJ, agreeing with the OBJ
//   THEIR  "their" + optional adjective + noun
//   THAN, THEN   the literal confusable words
//   anything else is emitted verbatim
//
// Corruptions, each applied at most once per clean token position:
//   delete_function_word   drop a singular determiner; labels the next token
//   swap_agreement         switch a verb or is/are to the other number
//   substitute_confusable  than<->then, their<->there
//   insert_spurious        insert "the"/"a" before a verb, adverb or preposition
// A rule's rate is the probability of firing at each position where it is
// applicable.

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "ged/corpus.hpp"

namespace ged {

enum class ErrorType { kDeleteFunctionWord, kSwapAgreement, kSubstituteConfusable, kInsertSpurious };

inline constexpr std::size_t kNumErrorTypes = 4;

std::string_view error_type_name(ErrorType t);
ErrorType parse_error_type(std::string_view name);

struct ErrorRule {
  ErrorType kind;
  double rate = 0.0;
};

/// All four rules at the same rate.
std::vector<ErrorRule> uniform_rules(double rate);

struct SynthOptions {
  /// Chance that an object noun is replaced by a one-off pseudo-word, so the
  /// unknown-token path is exercised.
  double rare_word_rate = 0.02;
};

inline constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

struct SynthSentence {
  std::vector<std::string> clean;
  LabeledSentence corrupted;
  std::vector<Span> spans;  // error spans over corrupted tokens
  // Long-range task only: subject noun and the verb that agrees with it.
  std::size_t subject_index = kNoIndex;
  std::size_t verb_index = kNoIndex;
};

struct RuleStats {
  std::array<std::size_t, kNumErrorTypes> eligible{};
  std::array<std::size_t, kNumErrorTypes> applied{};
  std::size_t clean_tokens = 0;
};

struct SynthCorpus {
  std::vector<SynthSentence> sentences;
  RuleStats stats;

  Corpus labeled() const;
};

std::vector<std::string> default_templates();

/// Deterministic in (templates, rules, n, seed, options); sentence i draws
/// from its own stream derived from `seed`. Throws ContractError for empty
/// templates, rates outside [0, 1] or rates of rules that compete for the same
/// token position summing above 1, and ConfigError for unknown template
/// symbols.
SynthCorpus generate(const std::vector<std::string>& templates, const std::vector<ErrorRule>& rules,
                     std::size_t n, std::uint64_t seed, const SynthOptions& options = {});

/// Sentences whose only possible error is a verb disagreeing with a subject
/// noun more than 7 positions earlier, with noun distractors in between.
/// Each sentence disagrees with probability `mismatch_rate`.
SynthCorpus long_range_task(std::size_t n, std::uint64_t seed, double mismatch_rate = 0.3);

/// Minimum subject-to-verb distance used by long_range_task.
inline constexpr std::size_t kLongRangeMinDistance = 8;

/// Lexicon lookups used by verifiers: number of a known noun form
/// (0 singular, 1 plural, -1 unknown) and of a known verb form.
int noun_number(std::string_view word);
int verb_number(std::string_view word);

}  // namespace ged
