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

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "ged/tensor.hpp"

namespace ged {

struct NamedTensor {
  std::string name;
  Tensor tensor;
};

struct GradCheckReport {
  double max_rel_error = 0.0;
  std::string worst_param;
  std::size_t worst_index = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  std::size_t entries_checked = 0;
  bool passed = true;
};

/// Builds a fresh graph and returns a scalar loss. Must be deterministic.
using LossBuilder = std::function<Tensor(Graph&)>;

/// Compares analytic gradients against central differences
/// (f(theta + eps) - f(theta - eps)) / (2 eps) for every entry of every tensor
/// in `params`. Relative error is |a - n| / max(|a|, |n|, 1e-6) so entries with
/// both gradients near zero are judged on absolute error. eps must lie in
/// [1e-6, 1e-4]. Leaves parameter values unchanged and gradients zeroed.
GradCheckReport grad_check(const LossBuilder& f, const std::vector<NamedTensor>& params,
                           double eps = 1e-5, double tol = 1e-4);

}  // namespace ged
