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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <vector>

#include "ged/error.hpp"
#include "ged/metrics.hpp"
#include "ged/scoring.hpp"
#include "ged/train.hpp"
#include "test_util.hpp"

using namespace ged;
using doctest::Approx;

namespace {

Vocabulary small_vocab() {
  return Vocabulary::from_tokens({"<pad>", "<unk>", "a", "b", "c", "d", "e", "f", "g", "h", "i", "j"});
}

EssayRecord essay(std::vector<std::vector<std::string>> sentences, double gold = 0.0) {
  EssayRecord e;
  e.id = "e";
  e.sentences = std::move(sentences);
  e.gold_score = gold;
  return e;
}

std::vector<EssayRecord> with_features(const std::vector<double>& f, const std::vector<double>& g) {
  std::vector<EssayRecord> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    EssayRecord e;
    e.id = "e" + std::to_string(i);
    e.feature = f[i];
    e.gold_score = g[i];
    out.push_back(e);
  }
  assign_default_split(out);
  return out;
}

}  // namespace

TEST_CASE("feature of a uniform model is one half") {
  Model m(ged::testing::tiny_config(Architecture::kCnn));
  CHECK(extract_feature(m, small_vocab(), essay({{"a", "b"}, {"c"}})) == 0.5);
}

TEST_CASE("feature is the token-weighted mean of P(correct)") {
  const Model m = ged::testing::tiny_model(Architecture::kBiLstm, 9);
  const auto vocab = small_vocab();
  const std::vector<std::string> s1 = {"a", "b"}, s2 = {"c", "d", "e"};
  const auto p1 = predict(m, vocab, s1), p2 = predict(m, vocab, s2);
  double sum = 0;
  for (double p : p1.prob_incorrect) sum += 1 - p;
  for (double p : p2.prob_incorrect) sum += 1 - p;
  const double f = extract_feature(m, vocab, essay({s1, s2}));
  CHECK(f == Approx(sum / 5).epsilon(1e-14));
  CHECK(extract_feature(m, vocab, essay({s2, s1})) == Approx(f).epsilon(1e-14));
  CHECK(extract_feature(m, vocab, essay({{"a"}})) == Approx(1 - predict(m, vocab, {"a"}).prob_incorrect[0]));
  CHECK(f >= 0.0);
  CHECK(f <= 1.0);
  CHECK_THROWS_AS(extract_feature(m, vocab, essay({})), ContractError);
}

TEST_CASE("least squares fit") {
  const auto fit = fit_least_squares({0, 1, 2, 3}, {1, 3, 5, 7});
  CHECK(fit.slope == Approx(2.0));
  CHECK(fit.intercept == Approx(1.0));
  CHECK(fit(10) == Approx(21.0));
  CHECK_THROWS_AS(fit_least_squares({1, 1, 1}, {1, 2, 3}), CorrelationError);
}

TEST_CASE("perfect feature correlates perfectly") {
  std::vector<double> f;
  for (int i = 0; i < 15; ++i) f.push_back(0.1 + 0.05 * i);
  const auto r = fit_and_correlate(with_features(f, f));
  CHECK(r.pearson == Approx(1.0));
  CHECK(r.spearman == Approx(1.0));
  CHECK(r.eval_indices == std::vector<std::size_t>{4, 9, 14});
}

TEST_CASE("held-out rank correlation matches the rank formula") {
  // Ten training essays with a positive trend, five held out with known ranks.
  std::vector<EssayRecord> essays;
  const double train_f[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95};
  for (int i = 0; i < 10; ++i) {
    EssayRecord e;
    e.id = "t" + std::to_string(i);
    e.feature = train_f[i];
    e.gold_score = 10 * train_f[i] + (i % 2 ? 0.5 : -0.5);
    e.split = EssaySplit::kTrain;
    essays.push_back(e);
  }
  const double ef[] = {0.15, 0.35, 0.55, 0.75, 0.85};
  const double eg[] = {2.0, 1.0, 4.0, 5.0, 3.0};
  for (int i = 0; i < 5; ++i) {
    EssayRecord e;
    e.id = "x" + std::to_string(i);
    e.feature = ef[i];
    e.gold_score = eg[i];
    e.split = EssaySplit::kTest;
    essays.push_back(e);
  }
  const auto r = fit_and_correlate(essays);
  CHECK(r.fit.slope > 0);
  // Feature ranks 1..5, gold ranks 2,1,4,5,3: sum d^2 = 1+1+1+1+4 = 8.
  CHECK(r.spearman == Approx(1.0 - 6.0 * 8 / (5 * 24)).epsilon(1e-14));
  const std::vector<double> fv(ef, ef + 5), gv(eg, eg + 5);
  CHECK(r.spearman == Approx(spearman(fv, gv)).epsilon(1e-14));
  CHECK(r.pearson == Approx(pearson(fv, gv)).epsilon(1e-12));
}

TEST_CASE("fit_and_correlate preconditions") {
  CHECK_THROWS_AS(fit_and_correlate(with_features({1, 2, 3, 4, 5}, {1, 2, 3, 4, 5})), ContractError);
  auto essays = with_features({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15},
                              {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15});
  essays[0].feature.reset();
  CHECK_THROWS_AS(fit_and_correlate(essays), ContractError);
  auto constant = with_features(std::vector<double>(15, 0.5), std::vector<double>(15, 1.0));
  CHECK_THROWS_AS(fit_and_correlate(constant), CorrelationError);
}

TEST_CASE("essay files") {
  const auto dir = std::filesystem::temp_directory_path() / "ged_test_essays";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "list.tsv") << "e1\t3.5\n# note\ne2\t4\ttest\n";
    std::ofstream(dir / "e1.txt") << "a b c\n\nd e\n";
    std::ofstream(dir / "e2.txt") << "f\n";
  }
  auto essays = read_essays((dir / "list.tsv").string(), dir.string());
  REQUIRE(essays.size() == 2);
  CHECK(essays[0].sentences.size() == 2);
  CHECK(essays[0].gold_score == 3.5);
  CHECK(essays[0].split == EssaySplit::kUnassigned);
  CHECK(essays[1].split == EssaySplit::kTest);
  essays[0].feature = 0.25;
  essays[1].feature = 0.5;
  CHECK(scores_csv(essays, LinearFit{2.0, 1.0}) ==
        "essay_id,feature,predicted_score\ne1,0.25,1.5\ne2,0.5,2\n");
  {
    std::ofstream(dir / "bad.tsv") << "e1\tnotanumber\n";
  }
  CHECK_THROWS_AS(read_essays((dir / "bad.tsv").string(), dir.string()), ParseError);
  std::filesystem::remove_all(dir);
}
