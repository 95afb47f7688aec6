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

#include "ged/model.hpp"

#include <algorithm>
#include <cmath>

#include "ged/error.hpp"
#include "ged/rng.hpp"

namespace ged {

namespace {

constexpr const char* kLstmNames[] = {"W_i", "U_i",  "V_i",    "b_i",    "W_f",
                                      "U_f", "V_f",  "b_f",    "W_cand", "U_cand",
                                      "b_cand", "W_o", "U_o",  "V_o",    "b_o"};

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

Model::Model(ModelConfig config) : config_(std::move(config)) {
  config_.validate();
  const ModelConfig& c = config_;
  const std::size_t d = c.embedding_dim, w = 2 * c.conv_window + 1, cd = c.conv_output_dim;
  const std::size_t h = c.recurrent_dim;

  add_param("embedding.E", Shape{c.vocab_size, d});

  std::size_t top_dim = 0;
  switch (c.architecture) {
    case Architecture::kCnn:
    case Architecture::kDeepCnn:
      add_param("conv1.W_c", Shape{cd, w * d});
      if (is_deep(c.architecture)) {
        add_param("conv2.pad", Shape{cd});
        add_param("conv2.W_c", Shape{cd, w * cd});
      }
      top_dim = cd;
      break;
    case Architecture::kBiRnn:
    case Architecture::kDeepBiRnn: {
      const int layers = is_deep(c.architecture) ? 2 : 1;
      for (int layer = 1; layer <= layers; ++layer) {
        const std::size_t in = layer == 1 ? d : 2 * h;
        for (const char* dir : {"fwd", "bwd"}) {
          const std::string prefix = "rnn" + std::to_string(layer) + "." + dir + ".";
          add_param(prefix + "W", Shape{h, in});
          add_param(prefix + "V", Shape{h, h});
        }
      }
      top_dim = 2 * h;
      break;
    }
    case Architecture::kBiLstm:
    case Architecture::kDeepBiLstm: {
      const int layers = is_deep(c.architecture) ? 2 : 1;
      for (int layer = 1; layer <= layers; ++layer) {
        const std::size_t in = layer == 1 ? d : 2 * h;
        for (const char* dir : {"fwd", "bwd"}) {
          const std::string prefix = "lstm" + std::to_string(layer) + "." + dir + ".";
          for (std::string_view name : kLstmNames) {
            const std::string full = prefix + std::string(name);
            if (name.front() == 'W') {
              add_param(full, Shape{h, in});
            } else if (name.front() == 'U') {
              add_param(full, Shape{h, h});
            } else if (name.front() == 'V') {
              add_param(full, c.full_peepholes ? Shape{h, h} : Shape{h});
            } else {
              add_param(full, Shape{h});
            }
          }
        }
      }
      top_dim = 2 * h;
      break;
    }
  }
  add_param("hidden.W", Shape{c.pre_output_dim, top_dim});
  add_param("hidden.b", Shape{c.pre_output_dim});
  add_param("out.W", Shape{c.num_labels, c.pre_output_dim});
}

void Model::add_param(const std::string& name, Shape shape) {
  index_.emplace(name, params_.size());
  params_.push_back({name, Tensor::zeros(std::move(shape), true)});
}

void Model::initialize(std::uint64_t seed) {
  Rng rng(seed);
  for (auto& [name, t] : params_) {
    auto v = t.values();
    const Shape& s = t.shape();
    if (name == "embedding.E" || name == "conv2.pad") {
      for (double& x : v) x = rng.uniform(-0.05, 0.05);
    } else if (s.rank() == 2) {
      const double limit = std::sqrt(6.0 / static_cast<double>(s[0] + s[1]));
      for (double& x : v) x = rng.uniform(-limit, limit);
    } else if (ends_with(name, ".b_f")) {
      std::fill(v.begin(), v.end(), 1.0);
    } else {
      std::fill(v.begin(), v.end(), 0.0);
    }
  }
}

bool Model::has_param(std::string_view name) const { return index_.find(name) != index_.end(); }

const Tensor& Model::param(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw ContractError("model has no parameter '" + std::string(name) + "'");
  return params_[it->second].tensor;
}

std::size_t Model::parameter_count() const {
  std::size_t n = 0;
  for (const auto& p : params_) n += p.tensor.size();
  return n;
}

void Model::zero_grad() {
  for (auto& p : params_) p.tensor.zero_grad();
}

Model Model::clone() const {
  Model copy(config_);
  copy.assign_values(*this);
  return copy;
}

void Model::assign_values(const Model& other) {
  if (other.params_.size() != params_.size()) throw ContractError("parameter layouts differ");
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (params_[i].name != other.params_[i].name ||
        !(params_[i].tensor.shape() == other.params_[i].tensor.shape())) {
      throw ContractError("parameter layouts differ at " + params_[i].name);
    }
    auto src = other.params_[i].tensor.values();
    std::copy(src.begin(), src.end(), params_[i].tensor.values().begin());
  }
}

}  // namespace ged
