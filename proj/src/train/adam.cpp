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

#include <cmath>

#include "ged/error.hpp"
#include "ged/kernels.hpp"
#include "ged/train.hpp"

namespace ged {

AdamState make_adam_state(const std::vector<NamedTensor>& params) {
  AdamState s;
  for (const auto& p : params) {
    s.m.emplace_back(p.tensor.size(), 0.0);
    s.v.emplace_back(p.tensor.size(), 0.0);
  }
  return s;
}

void adam_step(const std::vector<NamedTensor>& params, AdamState& state, const TrainConfig& cfg,
               const std::vector<bool>& skip) {
  if (state.m.size() != params.size()) throw ContractError("Adam state does not match parameters");
  for (std::size_t k = 0; k < params.size(); ++k) {
    if (state.m[k].size() != params[k].tensor.size()) {
      throw ContractError("Adam state shape mismatch for " + params[k].name);
    }
    for (double g : params[k].tensor.grad_view()) {
      if (!std::isfinite(g)) throw TrainingError("non-finite gradient in parameter " + params[k].name);
    }
  }
  ++state.t;
  const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.t));
  const auto& kern = kernels::active();
  for (std::size_t k = 0; k < params.size(); ++k) {
    if (k < skip.size() && skip[k]) continue;
    Tensor t = params[k].tensor;
    auto g = t.grad();  // zero-filled when nothing was accumulated
    kern.adam(t.values().data(), state.m[k].data(), state.v[k].data(), g.data(), t.size(),
              cfg.learning_rate, cfg.beta1, cfg.beta2, cfg.eps, c1, c2);
  }
}

}  // namespace ged
