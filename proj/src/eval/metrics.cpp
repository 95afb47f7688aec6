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

#include "ged/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "ged/error.hpp"

namespace ged {

double f_beta(double precision, double recall, double beta) {
  const double b2 = beta * beta;
  const double denom = b2 * precision + recall;
  if (denom == 0.0) return 0.0;
  return (1.0 + b2) * precision * recall / denom;
}

double precision(const DetectionCounts& c) {
  return c.predicted == 0 ? 0.0 : static_cast<double>(c.correct) / static_cast<double>(c.predicted);
}

double recall(const DetectionCounts& c) {
  return c.gold == 0 ? 0.0 : static_cast<double>(c.correct) / static_cast<double>(c.gold);
}

DetectionScores score(const DetectionCounts& c) {
  DetectionScores s;
  s.counts = c;
  s.precision = precision(c);
  s.recall = recall(c);
  s.f05 = f_beta(s.precision, s.recall, 0.5);
  return s;
}

DetectionCounts count_detections(std::span<const int> system, std::span<const int> reference) {
  if (system.size() != reference.size()) {
    throw ContractError("label sequences differ in length");
  }
  DetectionCounts c;
  for (std::size_t i = 0; i < system.size(); ++i) {
    const bool sys = system[i] == kIncorrect;
    const bool ref = reference[i] == kIncorrect;
    c.predicted += sys;
    c.gold += ref;
    c.correct += sys && ref;
  }
  return c;
}

DetectionScores detection_eval(const Corpus& system, const Corpus& reference) {
  if (system.size() != reference.size()) {
    throw AlignmentError(std::min(system.size(), reference.size()),
                         "system has " + std::to_string(system.size()) +
                             " sentences, reference has " + std::to_string(reference.size()));
  }
  DetectionCounts total;
  for (std::size_t s = 0; s < system.size(); ++s) {
    if (system[s].labels.size() != reference[s].labels.size()) {
      throw AlignmentError(s, "system has " + std::to_string(system[s].labels.size()) +
                                  " tokens, reference has " +
                                  std::to_string(reference[s].labels.size()));
    }
    total += count_detections(system[s].labels, reference[s].labels);
  }
  return score(total);
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw CorrelationError("inputs differ in length");
  if (xs.empty()) throw CorrelationError("empty input");
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw CorrelationError("constant input");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> fractional_ranks(std::span<const double> xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw CorrelationError("inputs differ in length");
  const auto rx = fractional_ranks(xs);
  const auto ry = fractional_ranks(ys);
  return pearson(rx, ry);
}

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", 100.0 * fraction);
  return buf;
}

std::string format_table(const std::vector<ReportRow>& rows) {
  std::size_t name_w = 6;
  for (const auto& r : rows) name_w = std::max(name_w, r.name.size());
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-*s %10s %8s %6s %6s %6s\n", static_cast<int>(name_w), "system",
                "predicted", "correct", "P", "R", "F0.5");
  os << line;
  for (const auto& r : rows) {
    const auto& s = r.scores;
    std::snprintf(line, sizeof line, "%-*s %10zu %8zu %6s %6s %6s\n", static_cast<int>(name_w),
                  r.name.c_str(), s.counts.predicted, s.counts.correct, percent(s.precision).c_str(),
                  percent(s.recall).c_str(), percent(s.f05).c_str());
    os << line;
  }
  return os.str();
}

std::string format_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  os << "system,predicted,correct,gold,P,R,F0.5\n";
  for (const auto& r : rows) {
    const auto& s = r.scores;
    os << r.name << ',' << s.counts.predicted << ',' << s.counts.correct << ',' << s.counts.gold
       << ',' << percent(s.precision) << ',' << percent(s.recall) << ',' << percent(s.f05) << '\n';
  }
  return os.str();
}

}  // namespace ged
