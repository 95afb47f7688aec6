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

// Token-level detection metrics and correlation coefficients.
//
// Precision, recall and F-scores are fractions in [0, 1] internally; reports
// multiply by 100 and round once, to one decimal, at presentation. Every 0/0
// (no predictions, no gold errors, P = R = 0) is defined as 0.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ged/corpus.hpp"

namespace ged {

struct DetectionCounts {
  std::size_t predicted = 0;  // tokens the system labels incorrect
  std::size_t gold = 0;       // tokens the reference labels incorrect
  std::size_t correct = 0;    // both

  DetectionCounts& operator+=(const DetectionCounts& o) {
    predicted += o.predicted;
    gold += o.gold;
    correct += o.correct;
    return *this;
  }
  friend bool operator==(const DetectionCounts&, const DetectionCounts&) = default;
};

struct DetectionScores {
  DetectionCounts counts;
  double precision = 0.0;
  double recall = 0.0;
  double f05 = 0.0;
};

/// (1 + b^2) P R / (b^2 P + R), or 0 when the denominator is 0. P and R may
/// be fractions or percentages; the result is on the same scale.
double f_beta(double precision, double recall, double beta);

double precision(const DetectionCounts& c);
double recall(const DetectionCounts& c);
DetectionScores score(const DetectionCounts& c);

DetectionCounts count_detections(std::span<const int> system, std::span<const int> reference);

/// Micro-averaged over all tokens. Throws AlignmentError when the sentence
/// counts differ or a sentence pair differs in length.
DetectionScores detection_eval(const Corpus& system, const Corpus& reference);

/// Product-moment correlation. Throws CorrelationError for mismatched or
/// empty inputs and for constant inputs.
double pearson(std::span<const double> xs, std::span<const double> ys);

/// 1-based ranks; tied values share their average rank.
std::vector<double> fractional_ranks(std::span<const double> xs);

/// Pearson correlation of fractional ranks.
double spearman(std::span<const double> xs, std::span<const double> ys);

struct ReportRow {
  std::string name;
  DetectionScores scores;
};

/// Plain-text table with columns predicted, correct, P, R, F0.5 (percent,
/// one decimal).
std::string format_table(const std::vector<ReportRow>& rows);
/// Same columns as CSV with a header line.
std::string format_csv(const std::vector<ReportRow>& rows);

/// Percent with one decimal, e.g. 0.4287 -> "42.9".
std::string percent(double fraction);

}  // namespace ged
