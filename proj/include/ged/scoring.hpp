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

// Essay-level correctness feature and its correlation with gold scores.
//
// Essay list (TSV): `essay_id <TAB> gold_score [<TAB> train|test]` per line.
// Each essay's text lives in <dir>/<essay_id>.txt, one whitespace-tokenized
// sentence per line. Without a split column every fifth essay (0-based index
// i with i % 5 == 4) is held out for evaluation and the rest fit the scorer.

#include <optional>
#include <string>
#include <vector>

#include "ged/model.hpp"
#include "ged/vocabulary.hpp"

namespace ged {

enum class EssaySplit { kUnassigned, kTrain, kTest };

struct EssayRecord {
  std::string id;
  std::vector<std::vector<std::string>> sentences;
  double gold_score = 0.0;
  std::optional<double> feature;
  EssaySplit split = EssaySplit::kUnassigned;
};

/// Token-weighted mean of P(correct) over every token of the essay. Throws
/// ContractError when the essay has no tokens.
double extract_feature(const Model& model, const Vocabulary& vocab, const EssayRecord& essay);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double operator()(double x) const { return slope * x + intercept; }
};

/// Least-squares line through (xs, ys). Throws CorrelationError when xs is
/// constant.
LinearFit fit_least_squares(const std::vector<double>& xs, const std::vector<double>& ys);

struct CorrelationResult {
  LinearFit fit;
  double pearson = 0.0;
  double spearman = 0.0;
  std::vector<std::size_t> eval_indices;
  std::vector<double> predictions;  // fitted scores for eval_indices
};

/// Fits score ~ a * feature + b on the training essays and correlates the
/// fitted scores with the gold scores of the held-out essays. Every essay must
/// carry a feature; each split needs at least three essays.
CorrelationResult fit_and_correlate(const std::vector<EssayRecord>& essays);

/// Applies the default split to essays whose split is unassigned.
void assign_default_split(std::vector<EssayRecord>& essays);

std::vector<EssayRecord> read_essays(const std::string& list_path, const std::string& text_dir);

/// "essay_id,feature,predicted_score" using `fit` for the prediction.
std::string scores_csv(const std::vector<EssayRecord>& essays, const LinearFit& fit);

}  // namespace ged
