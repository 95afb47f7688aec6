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

#include "ged/scoring.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ged/corpus.hpp"
#include "ged/corpus_io.hpp"
#include "ged/error.hpp"
#include "ged/metrics.hpp"
#include "ged/train.hpp"

namespace ged {

double extract_feature(const Model& model, const Vocabulary& vocab, const EssayRecord& essay) {
  double total = 0.0;
  std::size_t tokens = 0;
  for (const auto& sentence : essay.sentences) {
    if (sentence.empty()) continue;
    for (double p : predict(model, vocab, sentence).prob_incorrect) total += 1.0 - p;
    tokens += sentence.size();
  }
  if (tokens == 0) throw ContractError("essay '" + essay.id + "' has no tokens");
  return total / static_cast<double>(tokens);
}

LinearFit fit_least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.empty()) throw CorrelationError("fit needs paired, nonempty data");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) throw CorrelationError("constant feature");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

void assign_default_split(std::vector<EssayRecord>& essays) {
  for (std::size_t i = 0; i < essays.size(); ++i) {
    if (essays[i].split == EssaySplit::kUnassigned) {
      essays[i].split = i % 5 == 4 ? EssaySplit::kTest : EssaySplit::kTrain;
    }
  }
}

CorrelationResult fit_and_correlate(const std::vector<EssayRecord>& essays) {
  std::vector<double> train_x, train_y;
  CorrelationResult result;
  for (std::size_t i = 0; i < essays.size(); ++i) {
    const auto& e = essays[i];
    if (!e.feature) throw ContractError("essay '" + e.id + "' has no extracted feature");
    if (e.split == EssaySplit::kTrain) {
      train_x.push_back(*e.feature);
      train_y.push_back(e.gold_score);
    } else if (e.split == EssaySplit::kTest) {
      result.eval_indices.push_back(i);
    } else {
      throw ContractError("essay '" + e.id + "' is not assigned to a split");
    }
  }
  if (train_x.size() < 3 || result.eval_indices.size() < 3) {
    throw ContractError("each split needs at least 3 essays (train " +
                        std::to_string(train_x.size()) + ", eval " +
                        std::to_string(result.eval_indices.size()) + ")");
  }
  result.fit = fit_least_squares(train_x, train_y);
  std::vector<double> gold;
  for (std::size_t i : result.eval_indices) {
    result.predictions.push_back(result.fit(*essays[i].feature));
    gold.push_back(essays[i].gold_score);
  }
  result.pearson = pearson(result.predictions, gold);
  result.spearman = spearman(result.predictions, gold);
  return result;
}

std::vector<EssayRecord> read_essays(const std::string& list_path, const std::string& text_dir) {
  std::ifstream in(list_path, std::ios::binary);
  if (!in) throw DataError("cannot open " + list_path);
  std::vector<EssayRecord> essays;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, '\t')) cols.push_back(col);
    if (cols.size() < 2 || cols.size() > 3) {
      throw ParseError(list_path, line_no, "expected essay_id, gold_score and optional split");
    }
    EssayRecord e;
    e.id = cols[0];
    try {
      std::size_t used = 0;
      e.gold_score = std::stod(cols[1], &used);
      if (used != cols[1].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError(list_path, line_no, "bad gold score '" + cols[1] + "'");
    }
    if (cols.size() == 3) {
      if (cols[2] == "train") {
        e.split = EssaySplit::kTrain;
      } else if (cols[2] == "test") {
        e.split = EssaySplit::kTest;
      } else {
        throw ParseError(list_path, line_no, "split must be train or test");
      }
    }
    const auto path = std::filesystem::path(text_dir) / (e.id + ".txt");
    for (auto& s : read_sentences(path.string())) {
      if (!s.empty()) e.sentences.push_back(std::move(s));
    }
    essays.push_back(std::move(e));
  }
  return essays;
}

std::string scores_csv(const std::vector<EssayRecord>& essays, const LinearFit& fit) {
  std::ostringstream os;
  os << "essay_id,feature,predicted_score\n";
  char buf[96];
  for (const auto& e : essays) {
    const double f = e.feature.value_or(0.0);
    std::snprintf(buf, sizeof buf, ",%.10g,%.10g\n", f, fit(f));
    os << e.id << buf;
  }
  return os.str();
}

}  // namespace ged
