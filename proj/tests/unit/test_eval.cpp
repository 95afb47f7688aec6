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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ged/error.hpp"
#include "ged/metrics.hpp"
#include "ged/rng.hpp"

using namespace ged;
using doctest::Approx;

namespace {

// Weighted harmonic mean form of F-beta.
double harmonic_f(double p, double r, double beta) {
  if (p == 0.0 || r == 0.0) return 0.0;
  const double b2 = beta * beta;
  return 1.0 / ((b2 / (1.0 + b2)) / r + (1.0 / (1.0 + b2)) / p);
}

// Spearman for distinct values: 1 - 6 sum d^2 / (n (n^2 - 1)).
double rank_formula(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  auto ranks = [n](const std::vector<double>& v) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(n);
    for (std::size_t k = 0; k < n; ++k) r[idx[k]] = static_cast<double>(k + 1);
    return r;
  };
  const auto rx = ranks(x), ry = ranks(y);
  double d2 = 0;
  for (std::size_t i = 0; i < n; ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
  const double nn = static_cast<double>(n);
  return 1.0 - 6.0 * d2 / (nn * (nn * nn - 1.0));
}

}  // namespace

TEST_CASE("f_beta examples") {
  CHECK(f_beta(56.5, 8.2, 0.5) == Approx(25.9).epsilon(0.05 / 25.9));
  CHECK(f_beta(42.9, 60.2, 0.5) == Approx(45.5).epsilon(0.05 / 45.5));
  CHECK(f_beta(59.2, 21.7, 0.5) == Approx(44.0).epsilon(0.05 / 44.0));
  CHECK(f_beta(0.0, 0.0, 0.5) == 0.0);
  CHECK(f_beta(10.0, 0.0, 0.5) == 0.0);
  for (double x : {1.0, 33.3, 100.0}) {
    for (double b : {0.5, 1.0, 2.0}) CHECK(f_beta(x, x, b) == Approx(x));
  }
}

TEST_CASE("f_beta agrees with the harmonic-mean form and is monotone") {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double p = rng.uniform(0, 100), r = rng.uniform(0, 100);
    CHECK(f_beta(p, r, 0.5) == Approx(harmonic_f(p, r, 0.5)).epsilon(1e-12));
    CHECK(f_beta(p, r, 1.0) == Approx(f_beta(r, p, 1.0)).epsilon(1e-14));
    const double dp = rng.uniform(0, 100 - p);
    CHECK(f_beta(p + dp, r, 0.5) >= f_beta(p, r, 0.5) - 1e-12);
    CHECK(f_beta(p, std::min(100.0, r + dp), 0.5) >= f_beta(p, r, 0.5) - 1e-12);
  }
}

TEST_CASE("detection counts from table counts") {
  const DetectionCounts c{4199, 2992, 1800};
  const auto s = score(c);
  CHECK(percent(s.precision) == "42.9");
  CHECK(percent(s.recall) == "60.2");
  CHECK(percent(s.f05) == "45.5");
}

TEST_CASE("detection evaluation") {
  const Corpus ref = {{{"a", "b", "c"}, {0, 1, 1}}, {{"d"}, {1}}};
  const auto same = detection_eval(ref, ref);
  CHECK(same.precision == 1.0);
  CHECK(same.recall == 1.0);
  CHECK(same.f05 == 1.0);

  Corpus none = ref;
  for (auto& s : none) std::fill(s.labels.begin(), s.labels.end(), 0);
  const auto z = detection_eval(none, ref);
  CHECK(z.counts.predicted == 0);
  CHECK(z.precision == 0.0);
  CHECK(z.f05 == 0.0);

  const Corpus sys = {{{"a", "b", "c"}, {1, 1, 0}}, {{"d"}, {1}}};
  const auto s = detection_eval(sys, ref);
  CHECK(s.counts == DetectionCounts{3, 3, 2});
  const Corpus swapped = {sys[1], sys[0]}, ref_swapped = {ref[1], ref[0]};
  CHECK(detection_eval(swapped, ref_swapped).counts == s.counts);

  try {
    detection_eval({sys[0]}, ref);
    FAIL("expected AlignmentError");
  } catch (const AlignmentError& e) {
    CHECK(e.index() == 1);
  }
  const Corpus short_sent = {{{"a", "b"}, {0, 0}}, {{"d"}, {1}}};
  try {
    detection_eval(short_sent, ref);
    FAIL("expected AlignmentError");
  } catch (const AlignmentError& e) {
    CHECK(e.index() == 0);
  }
}

TEST_CASE("correlations") {
  const std::vector<double> x = {1, 2, 3, 4};
  const std::vector<double> neg = {-1, -2, -3, -4};
  CHECK(pearson(x, x) == Approx(1.0));
  CHECK(spearman(x, x) == Approx(1.0));
  CHECK(pearson(x, neg) == Approx(-1.0));
  CHECK(spearman(x, neg) == Approx(-1.0));
  const std::vector<double> y = {1, 3, 2, 4};
  CHECK(spearman(x, y) == Approx(0.8).epsilon(1e-14));
  CHECK(spearman(x, y) == Approx(rank_formula(x, y)).epsilon(1e-14));
  CHECK_THROWS_AS(pearson(x, std::vector<double>{2, 2, 2, 2}), CorrelationError);
  CHECK_THROWS_AS(pearson(x, std::vector<double>{1, 2}), CorrelationError);
  CHECK_THROWS_AS(pearson(std::vector<double>{}, std::vector<double>{}), CorrelationError);
  CHECK(fractional_ranks(std::vector<double>{10, 20, 20, 5}) == std::vector<double>{2, 3.5, 3.5, 1});
}

TEST_CASE("spearman matches the rank formula and ignores monotone transforms") {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + rng.index(20);
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = rng.uniform(-5, 5);
      b[i] = a[i] + rng.uniform(-3, 3);
    }
    CHECK(spearman(a, b) == Approx(rank_formula(a, b)).epsilon(1e-12));
    std::vector<double> ta(n);
    for (std::size_t i = 0; i < n; ++i) ta[i] = std::exp(a[i]) * 3 + 1;
    CHECK(spearman(ta, b) == Approx(spearman(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("report formatting") {
  const std::vector<ReportRow> rows = {{"sys", score(DetectionCounts{4199, 2992, 1800})}};
  const auto csv = format_csv(rows);
  CHECK(csv == "system,predicted,correct,gold,P,R,F0.5\nsys,4199,1800,2992,42.9,60.2,45.5\n");
  const auto table = format_table(rows);
  CHECK(table.find("42.9") != std::string::npos);
  CHECK(table.find("F0.5") != std::string::npos);
  CHECK(percent(1.0) == "100.0");
  CHECK(percent(0.0) == "0.0");
}
