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

// Composition functions that map token embeddings to per-token hidden
// vectors, and the full forward pass from token ids to label distributions.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ged/model.hpp"
#include "ged/tensor.hpp"

namespace ged {

/// Row lookup per token. Throws VocabularyError for ids outside the table.
std::vector<Tensor> embed(Graph& g, const Tensor& table, std::span<const std::size_t> ids);

/// Windowed concatenation x_{t-w} : ... : x_{t+w}; positions outside the
/// sentence read `pad`.
std::vector<Tensor> conv_context(Graph& g, std::span<const Tensor> xs, const Tensor& pad,
                                 std::size_t window);

/// tanh(W_c c_t) over the windowed contexts.
std::vector<Tensor> conv_layer(Graph& g, std::span<const Tensor> xs, const Tensor& pad,
                               const Tensor& w_c, std::size_t window);

struct ElmanParams {
  Tensor w;  // input weights
  Tensor v;  // recurrent weights
  Activation activation = Activation::kSigmoid;
};

/// h_t = f(W x_t + V h_{t-1}).
Tensor elman_step(Graph& g, const Tensor& x, const Tensor& h_prev, const ElmanParams& p);

struct LstmParams {
  Tensor w_i, u_i, v_i, b_i;
  Tensor w_f, u_f, v_f, b_f;
  Tensor w_cand, u_cand, b_cand;
  Tensor w_o, u_o, v_o, b_o;
  bool full_peepholes = false;
};

struct LstmState {
  Tensor h;
  Tensor c;
};

/// One LSTM step with peepholes: the input and forget gates look at c_{t-1},
/// the output gate at the new c_t.
LstmState lstm_step(Graph& g, const Tensor& x, const LstmState& prev, const LstmParams& p);

/// Runs a recurrence left to right from a zero initial state.
using RecurrentPass = std::function<std::vector<Tensor>(Graph&, std::span<const Tensor>)>;

RecurrentPass elman_pass(ElmanParams p);
RecurrentPass lstm_pass(LstmParams p);

/// Concatenates a left-to-right pass with a right-to-left pass per position:
/// h_t = fwd_t : bwd_t.
std::vector<Tensor> bidirectional(Graph& g, std::span<const Tensor> xs, const RecurrentPass& fwd,
                                  const RecurrentPass& bwd);

/// Parameters of a recurrent layer, looked up from the model by prefix
/// (e.g. "lstm1.fwd.").
ElmanParams elman_params(const Model& m, const std::string& prefix);
LstmParams lstm_params(const Model& m, const std::string& prefix);

/// Per-token label logits (before softmax) for a nonempty sentence.
std::vector<Tensor> forward_logits(Graph& g, const Model& m, std::span<const std::size_t> ids);

/// Label distributions, one row of num_labels probabilities per token.
/// Evaluated without recording a graph. Throws ContractError when empty.
std::vector<std::vector<double>> forward(const Model& m, std::span<const std::size_t> ids);

struct SentenceLoss {
  Tensor loss;  // mean token cross-entropy
  std::vector<std::vector<double>> probs;
};

/// Mean over tokens of -log p(gold). Labels must match ids in length.
SentenceLoss sentence_loss(Graph& g, const Model& m, std::span<const std::size_t> ids,
                           std::span<const int> labels);

}  // namespace ged
