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

#include "ged/synth.hpp"

#include <cctype>
#include <sstream>
#include <unordered_map>

#include "ged/error.hpp"
#include "ged/rng.hpp"

namespace ged {

namespace {

struct Pair {
  const char* singular;
  const char* plural;
};

constexpr Pair kNouns[] = {
    {"dog", "dogs"},         {"cat", "cats"},           {"teacher", "teachers"},
    {"student", "students"}, {"car", "cars"},           {"book", "books"},
    {"house", "houses"},     {"friend", "friends"},     {"city", "cities"},
    {"child", "children"},   {"bird", "birds"},         {"farmer", "farmers"},
    {"doctor", "doctors"},   {"girl", "girls"},         {"boy", "boys"},
    {"man", "men"},          {"woman", "women"},        {"table", "tables"},
    {"window", "windows"},   {"door", "doors"},         {"garden", "gardens"},
    {"river", "rivers"},     {"song", "songs"},         {"letter", "letters"},
    {"picture", "pictures"}, {"game", "games"},         {"box", "boxes"},
    {"key", "keys"},         {"cabinet", "cabinets"},   {"road", "roads"},
    {"shop", "shops"},       {"tree", "trees"},         {"horse", "horses"},
    {"baby", "babies"},      {"neighbour", "neighbours"}, {"painter", "painters"},
    {"writer", "writers"},   {"singer", "singers"},     {"player", "players"},
    {"lawyer", "lawyers"},
};

constexpr Pair kVerbs[] = {
    {"likes", "like"},       {"sees", "see"},       {"wants", "want"},
    {"reads", "read"},       {"finds", "find"},     {"helps", "help"},
    {"knows", "know"},       {"visits", "visit"},   {"needs", "need"},
    {"paints", "paint"},     {"watches", "watch"},  {"carries", "carry"},
    {"buys", "buy"},         {"brings", "bring"},   {"follows", "follow"},
    {"loves", "love"},       {"remembers", "remember"}, {"describes", "describe"},
    {"cleans", "clean"},     {"opens", "open"},
};

const std::vector<std::string> kAdjectives = {
    "big",    "small",  "nice",  "new",  "red",     "happy",  "tall",   "short", "quiet", "noisy",
    "young",  "dark",   "bright", "cold", "warm",   "strange", "famous", "busy", "lazy",  "clever"};
const std::vector<std::string> kComparatives = {
    "bigger", "smaller", "nicer", "newer",  "taller", "shorter", "quieter",
    "younger", "darker", "colder", "warmer", "busier", "lazier", "stranger"};
const std::vector<std::string> kPrepositions = {"in",  "on",    "near",   "with",
                                                "behind", "under", "beside", "from"};
const std::vector<std::string> kAdverbs = {"often", "always", "never", "sometimes", "usually", "rarely"};
const std::vector<std::string> kSingularDets = {"the", "a", "this", "that"};
const std::vector<std::string> kPluralDets = {"the", "these", "some", "those"};
const std::vector<std::string> kSpuriousWords = {"the", "a"};
const std::vector<std::string> kSyllables = {"bo", "ra", "ki", "zu", "mel", "tor", "vin", "sha",
                                             "plo", "dre", "gan", "fu", "lek", "wi", "nor", "stu"};

enum class Role { kOther, kDetSg, kNoun, kVerb, kBe, kConfusable, kAdv, kPrep };

struct Token {
  std::string text;
  Role role = Role::kOther;
  std::string alternative;  // other agreement form, or confusable partner
};

class Expander {
 public:
  Expander(Rng& rng, const SynthOptions& options) : rng_(rng), options_(options) {}

  std::vector<Token> expand(const std::string& tmpl) {
    std::vector<Token> out;
    std::istringstream ss(tmpl);
    std::string sym;
    while (ss >> sym) expand_symbol(sym, out);
    return out;
  }

 private:
  void noun_phrase(int number, bool object, std::vector<Token>& out) {
    if (number == 0) {
      out.push_back({rng_.pick(kSingularDets), Role::kDetSg, {}});
    } else {
      out.push_back({rng_.pick(kPluralDets), Role::kOther, {}});
    }
    if (rng_.bernoulli(0.3)) out.push_back({rng_.pick(kAdjectives), Role::kOther, {}});
    noun(number, object, out);
  }

  void noun(int number, bool object, std::vector<Token>& out) {
    if (object && rng_.bernoulli(options_.rare_word_rate)) {
      std::string w;
      for (int i = 0; i < 3; ++i) w += rng_.pick(kSyllables);
      out.push_back({w, Role::kNoun, {}});
      return;
    }
    const Pair& p = kNouns[rng_.index(std::size(kNouns))];
    out.push_back({number == 0 ? p.singular : p.plural, Role::kNoun, {}});
  }

  Token agreeing_verb(int number) {
    const Pair& p = kVerbs[rng_.index(std::size(kVerbs))];
    return number == 0 ? Token{p.singular, Role::kVerb, p.plural}
                       : Token{p.plural, Role::kVerb, p.singular};
  }

  static Token be(int number) {
    return number == 0 ? Token{"is", Role::kBe, "are"} : Token{"are", Role::kBe, "is"};
  }

  void expand_symbol(const std::string& sym, std::vector<Token>& out) {
    if (sym == "SUBJ") {
      number_ = static_cast<int>(rng_.index(2));
      if (rng_.bernoulli(0.25)) {
        static const std::vector<std::string> sg = {"he", "she", "it"};
        static const std::vector<std::string> pl = {"they", "we"};
        out.push_back({rng_.pick(number_ == 0 ? sg : pl), Role::kOther, {}});
      } else {
        noun_phrase(number_, false, out);
      }
    } else if (sym == "VERB") {
      out.push_back(agreeing_verb(number_));
    } else if (sym == "BE") {
      out.push_back(be(number_));
    } else if (sym == "OBJ") {
      noun_phrase(static_cast<int>(rng_.index(2)), true, out);
    } else if (sym == "PP") {
      out.push_back({rng_.pick(kPrepositions), Role::kPrep, {}});
      noun_phrase(static_cast<int>(rng_.index(2)), true, out);
    } else if (sym == "ADV") {
      out.push_back({rng_.pick(kAdverbs), Role::kAdv, {}});
    } else if (sym == "CMP") {
      out.push_back({rng_.pick(kComparatives), Role::kOther, {}});
    } else if (sym == "EXIST") {
      const int n = static_cast<int>(rng_.index(2));
      out.push_back({"there", Role::kConfusable, "their"});
      out.push_back(be(n));
      noun_phrase(n, true, out);
    } else if (sym == "THEIR") {
      out.push_back({"their", Role::kConfusable, "there"});
      if (rng_.bernoulli(0.3)) out.push_back({rng_.pick(kAdjectives), Role::kOther, {}});
      noun(static_cast<int>(rng_.index(2)), true, out);
    } else if (sym == "THAN") {
      out.push_back({"than", Role::kConfusable, "then"});
    } else if (sym == "THEN") {
      out.push_back({"then", Role::kConfusable, "than"});
    } else if (!sym.empty() && std::isupper(static_cast<unsigned char>(sym[0]))) {
      throw ConfigError("unknown template symbol '" + sym + "'");
    } else {
      out.push_back({sym, Role::kOther, {}});
    }
  }

  Rng& rng_;
  const SynthOptions& options_;
  int number_ = 0;
};

bool applicable(ErrorType t, Role role) {
  switch (t) {
    case ErrorType::kDeleteFunctionWord:
      return role == Role::kDetSg;
    case ErrorType::kSwapAgreement:
      return role == Role::kVerb || role == Role::kBe;
    case ErrorType::kSubstituteConfusable:
      return role == Role::kConfusable;
    case ErrorType::kInsertSpurious:
      return role == Role::kVerb || role == Role::kBe || role == Role::kAdv || role == Role::kPrep;
  }
  return false;
}

// Rates of the rules competing for one token position must sum to at most 1.
void validate_rules(const std::vector<ErrorRule>& rules) {
  for (const auto& r : rules) {
    if (!(r.rate >= 0.0 && r.rate <= 1.0)) {
      throw ContractError("error rate for " + std::string(error_type_name(r.kind)) +
                          " must lie in [0, 1]");
    }
  }
  for (Role role : {Role::kOther, Role::kDetSg, Role::kNoun, Role::kVerb, Role::kBe,
                    Role::kConfusable, Role::kAdv, Role::kPrep}) {
    double total = 0.0;
    for (const auto& r : rules) {
      if (applicable(r.kind, role)) total += r.rate;
    }
    if (total > 1.0 + 1e-12) throw ContractError("error rates at one token position sum above 1");
  }
}

SynthSentence corrupt(const std::vector<Token>& clean, const std::vector<ErrorRule>& rules, Rng& rng,
                      RuleStats& stats) {
  SynthSentence s;
  auto& toks = s.corrupted.tokens;
  auto& labels = s.corrupted.labels;
  bool gap_pending = false;
  auto emit = [&](const std::string& text, bool wrong) {
    labels.push_back(wrong || gap_pending ? kIncorrect : kCorrect);
    toks.push_back(text);
    gap_pending = false;
  };
  for (const Token& tok : clean) {
    s.clean.push_back(tok.text);
    ++stats.clean_tokens;
    const double u = rng.uniform();
    double cumulative = 0.0;
    const ErrorRule* fired = nullptr;
    for (const auto& rule : rules) {
      if (!applicable(rule.kind, tok.role)) continue;
      ++stats.eligible[static_cast<std::size_t>(rule.kind)];
      cumulative += rule.rate;
      if (!fired && u < cumulative) fired = &rule;
    }
    if (!fired) {
      emit(tok.text, false);
      continue;
    }
    ++stats.applied[static_cast<std::size_t>(fired->kind)];
    const std::size_t k = toks.size();
    switch (fired->kind) {
      case ErrorType::kDeleteFunctionWord:
        s.spans.push_back({k, k});
        gap_pending = true;
        break;
      case ErrorType::kSwapAgreement:
      case ErrorType::kSubstituteConfusable:
        s.spans.push_back({k, k + 1});
        emit(tok.alternative, true);
        break;
      case ErrorType::kInsertSpurious:
        s.spans.push_back({k, k + 1});
        emit(rng.pick(kSpuriousWords), true);
        emit(tok.text, false);
        break;
    }
  }
  if (gap_pending && !labels.empty()) labels.back() = kIncorrect;
  return s;
}

}  // namespace

std::string_view error_type_name(ErrorType t) {
  switch (t) {
    case ErrorType::kDeleteFunctionWord:
      return "delete_function_word";
    case ErrorType::kSwapAgreement:
      return "swap_agreement";
    case ErrorType::kSubstituteConfusable:
      return "substitute_confusable";
    case ErrorType::kInsertSpurious:
      return "insert_spurious";
  }
  return "?";
}

ErrorType parse_error_type(std::string_view name) {
  for (auto t : {ErrorType::kDeleteFunctionWord, ErrorType::kSwapAgreement,
                 ErrorType::kSubstituteConfusable, ErrorType::kInsertSpurious}) {
    if (error_type_name(t) == name) return t;
  }
  throw ConfigError("unknown error type '" + std::string(name) + "'");
}

std::vector<ErrorRule> uniform_rules(double rate) {
  return {{ErrorType::kDeleteFunctionWord, rate},
          {ErrorType::kSwapAgreement, rate},
          {ErrorType::kSubstituteConfusable, rate},
          {ErrorType::kInsertSpurious, rate}};
}

std::vector<std::string> default_templates() {
  return {
      "SUBJ VERB OBJ .",
      "SUBJ VERB OBJ PP .",
      "SUBJ ADV VERB OBJ .",
      "SUBJ BE CMP THAN OBJ .",
      "SUBJ VERB OBJ and THEN SUBJ VERB OBJ .",
      "EXIST PP .",
      "SUBJ VERB THEIR .",
      "PP , SUBJ VERB OBJ .",
  };
}

Corpus SynthCorpus::labeled() const {
  Corpus out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(s.corrupted);
  return out;
}

SynthCorpus generate(const std::vector<std::string>& templates, const std::vector<ErrorRule>& rules,
                     std::size_t n, std::uint64_t seed, const SynthOptions& options) {
  if (templates.empty()) throw ContractError("no grammar templates");
  validate_rules(rules);
  SynthCorpus corpus;
  corpus.sentences.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(derive_seed(seed, i));
    Expander expander(rng, options);
    auto clean = expander.expand(rng.pick(templates));
    corpus.sentences.push_back(corrupt(clean, rules, rng, corpus.stats));
  }
  return corpus;
}

SynthCorpus long_range_task(std::size_t n, std::uint64_t seed, double mismatch_rate) {
  if (n == 0) throw ContractError("long_range_task needs n >= 1");
  if (!(mismatch_rate >= 0.0 && mismatch_rate <= 1.0)) {
    throw ContractError("mismatch_rate must lie in [0, 1]");
  }
  SynthCorpus corpus;
  corpus.sentences.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(derive_seed(seed ^ 0x6c6f6e6772616e67ULL, i));
    SynthSentence s;
    std::vector<std::string>& toks = s.corrupted.tokens;
    const int number = static_cast<int>(rng.index(2));
    toks.push_back(rng.pick(number == 0 ? kSingularDets : kPluralDets));
    if (rng.bernoulli(0.3)) toks.push_back(rng.pick(kAdjectives));
    const Pair& subj = kNouns[rng.index(std::size(kNouns))];
    s.subject_index = toks.size();
    toks.push_back(number == 0 ? subj.singular : subj.plural);
    const std::size_t min_pps = 2 + rng.index(3);
    std::size_t pps = 0;
    while (pps < min_pps || toks.size() - s.subject_index < kLongRangeMinDistance) {
      const int distractor = static_cast<int>(rng.index(2));
      toks.push_back(rng.pick(kPrepositions));
      toks.push_back(rng.pick(distractor == 0 ? kSingularDets : kPluralDets));
      if (rng.bernoulli(0.3)) toks.push_back(rng.pick(kAdjectives));
      const Pair& d = kNouns[rng.index(std::size(kNouns))];
      toks.push_back(distractor == 0 ? d.singular : d.plural);
      ++pps;
    }
    const bool mismatch = rng.bernoulli(mismatch_rate);
    const int verb_form = mismatch ? 1 - number : number;
    const Pair& v = kVerbs[rng.index(std::size(kVerbs))];
    s.verb_index = toks.size();
    toks.push_back(verb_form == 0 ? v.singular : v.plural);
    const int obj = static_cast<int>(rng.index(2));
    toks.push_back(rng.pick(obj == 0 ? kSingularDets : kPluralDets));
    const Pair& o = kNouns[rng.index(std::size(kNouns))];
    toks.push_back(obj == 0 ? o.singular : o.plural);
    toks.push_back(".");
    s.clean = toks;
    s.clean[s.verb_index] = number == 0 ? v.singular : v.plural;
    s.corrupted.labels.assign(toks.size(), kCorrect);
    if (mismatch) {
      s.corrupted.labels[s.verb_index] = kIncorrect;
      s.spans.push_back({s.verb_index, s.verb_index + 1});
      ++corpus.stats.applied[static_cast<std::size_t>(ErrorType::kSwapAgreement)];
    }
    ++corpus.stats.eligible[static_cast<std::size_t>(ErrorType::kSwapAgreement)];
    corpus.stats.clean_tokens += toks.size();
    corpus.sentences.push_back(std::move(s));
  }
  return corpus;
}

int noun_number(std::string_view word) {
  for (const Pair& p : kNouns) {
    if (word == p.singular) return 0;
    if (word == p.plural) return 1;
  }
  return -1;
}

int verb_number(std::string_view word) {
  if (word == "is") return 0;
  if (word == "are") return 1;
  for (const Pair& p : kVerbs) {
    if (word == p.singular) return 0;
    if (word == p.plural) return 1;
  }
  return -1;
}

}  // namespace ged
