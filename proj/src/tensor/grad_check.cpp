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

#include "ged/grad_check.hpp"

#include <algorithm>
#include <cmath>

#include "ged/error.hpp"

namespace ged {

namespace {

double evaluate(const LossBuilder& f) {
  Graph g;
  return f(g).item();
}

}  // namespace

GradCheckReport grad_check(const LossBuilder& f, const std::vector<NamedTensor>& params, double eps,
                           double tol) {
  if (!(eps >= 1e-6 && eps <= 1e-4)) {
    throw ContractError("grad_check eps must lie in [1e-6, 1e-4], got " + std::to_string(eps));
  }
  std::vector<Tensor> ps;
  for (const auto& p : params) {
    ps.push_back(p.tensor);
    ps.back().zero_grad();
  }
  {
    Graph g;
    Tensor loss = f(g);
    g.backward(loss);
  }
  std::vector<std::vector<double>> analytic;
  for (Tensor& p : ps) {
    auto gr = p.grad();
    analytic.emplace_back(gr.begin(), gr.end());
    p.zero_grad();
  }

  GradCheckReport report;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    auto values = ps[k].values();
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double orig = values[i];
      values[i] = orig + eps;
      const double plus = evaluate(f);
      values[i] = orig - eps;
      const double minus = evaluate(f);
      values[i] = orig;
      const double numeric = (plus - minus) / (2.0 * eps);
      const double a = analytic[k][i];
      const double denom = std::max({std::abs(a), std::abs(numeric), 1e-6});
      const double rel = std::abs(a - numeric) / denom;
      ++report.entries_checked;
      if (rel > report.max_rel_error || report.entries_checked == 1) {
        report.max_rel_error = rel;
        report.worst_param = params[k].name;
        report.worst_index = i;
        report.worst_analytic = a;
        report.worst_numeric = numeric;
      }
    }
    ps[k].zero_grad();
  }
  report.passed = report.max_rel_error < tol;
  return report;
}

}  // namespace ged
