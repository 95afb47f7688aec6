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

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ged/grad_check.hpp"
#include "ged/model_config.hpp"
#include "ged/tensor.hpp"

namespace ged {

/// Architecture config plus its named parameters.
///
/// Parameter names are stable and listed in creation order:
///   embedding.E                          vocab_size x embedding_dim
///   conv1.W_c                            (cnn) conv_output_dim x (2w+1)*embedding_dim
///   conv2.pad, conv2.W_c                 (deep-cnn) second-layer padding and weights
///   rnn{1,2}.{fwd,bwd}.{W,V}             (bi-rnn, deep-bi-rnn)
///   lstm{1,2}.{fwd,bwd}.{W_i,U_i,V_i,b_i,W_f,U_f,V_f,b_f,W_cand,U_cand,b_cand,
///                        W_o,U_o,V_o,b_o}  (bi-lstm, deep-bi-lstm)
///   hidden.W, hidden.b                   pre-output tanh layer
///   out.W                                output projection to label logits
class Model {
 public:
  /// Allocates zero-valued parameters. Throws ConfigError for invalid configs.
  explicit Model(ModelConfig config);

  // Parameters are shared handles, so copies would alias; use clone().
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;
  Model(Model&&) = default;
  Model& operator=(Model&&) = default;

  /// Embeddings uniform in +-0.05, weight matrices Glorot-uniform, biases zero,
  /// forget-gate biases 1.0, diagonal peepholes zero.
  void initialize(std::uint64_t seed);

  const ModelConfig& config() const { return config_; }

  const std::vector<NamedTensor>& parameters() const { return params_; }
  bool has_param(std::string_view name) const;
  /// Throws ContractError when absent.
  const Tensor& param(std::string_view name) const;

  std::size_t parameter_count() const;
  void zero_grad();

  /// Independent copy of all parameter values.
  Model clone() const;
  /// Copies values from a model with an identical parameter layout.
  void assign_values(const Model& other);

 private:
  void add_param(const std::string& name, Shape shape);

  ModelConfig config_;
  std::vector<NamedTensor> params_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

}  // namespace ged
