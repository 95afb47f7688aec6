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

#include "ged/layers.hpp"

#include <algorithm>

#include "ged/error.hpp"

namespace ged {

std::vector<Tensor> embed(Graph& g, const Tensor& table, std::span<const std::size_t> ids) {
  std::vector<Tensor> out;
  out.reserve(ids.size());
  for (std::size_t id : ids) {
    if (id >= table.shape()[0]) {
      throw VocabularyError("token id " + std::to_string(id) + " outside vocabulary of size " +
                            std::to_string(table.shape()[0]));
    }
    out.push_back(g.row(table, id));
  }
  return out;
}

std::vector<Tensor> conv_context(Graph& g, std::span<const Tensor> xs, const Tensor& pad,
                                 std::size_t window) {
  const auto n = static_cast<std::ptrdiff_t>(xs.size());
  const auto w = static_cast<std::ptrdiff_t>(window);
  std::vector<Tensor> out;
  out.reserve(xs.size());
  std::vector<Tensor> parts(static_cast<std::size_t>(2 * w + 1));
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    for (std::ptrdiff_t k = -w; k <= w; ++k) {
      const std::ptrdiff_t s = t + k;
      parts[static_cast<std::size_t>(k + w)] = (s < 0 || s >= n) ? pad : xs[static_cast<std::size_t>(s)];
    }
    out.push_back(g.concat(parts));
  }
  return out;
}

std::vector<Tensor> conv_layer(Graph& g, std::span<const Tensor> xs, const Tensor& pad,
                               const Tensor& w_c, std::size_t window) {
  std::vector<Tensor> out;
  out.reserve(xs.size());
  for (const Tensor& c : conv_context(g, xs, pad, window)) out.push_back(g.tanh(g.matvec(w_c, c)));
  return out;
}

Tensor elman_step(Graph& g, const Tensor& x, const Tensor& h_prev, const ElmanParams& p) {
  Tensor z = g.add(g.matvec(p.w, x), g.matvec(p.v, h_prev));
  return p.activation == Activation::kSigmoid ? g.sigmoid(z) : g.tanh(z);
}

namespace {

Tensor peephole(Graph& g, const Tensor& v, const Tensor& c, bool full) {
  return full ? g.matvec(v, c) : g.mul(v, c);
}

}  // namespace

LstmState lstm_step(Graph& g, const Tensor& x, const LstmState& prev, const LstmParams& p) {
  const bool full = p.full_peepholes;
  Tensor i = g.sigmoid(g.add({g.matvec(p.w_i, x), g.matvec(p.u_i, prev.h),
                              peephole(g, p.v_i, prev.c, full), p.b_i}));
  Tensor f = g.sigmoid(g.add({g.matvec(p.w_f, x), g.matvec(p.u_f, prev.h),
                              peephole(g, p.v_f, prev.c, full), p.b_f}));
  Tensor cand = g.tanh(g.add({g.matvec(p.w_cand, x), g.matvec(p.u_cand, prev.h), p.b_cand}));
  Tensor c = g.add(g.mul(f, prev.c), g.mul(i, cand));
  Tensor o = g.sigmoid(g.add({g.matvec(p.w_o, x), g.matvec(p.u_o, prev.h),
                              peephole(g, p.v_o, c, full), p.b_o}));
  Tensor h = g.mul(o, g.tanh(c));
  return {h, c};
}

RecurrentPass elman_pass(ElmanParams p) {
  return [p = std::move(p)](Graph& g, std::span<const Tensor> xs) {
    std::vector<Tensor> hs;
    hs.reserve(xs.size());
    Tensor h = Tensor::zeros(Shape{p.v.shape()[0]});
    for (const Tensor& x : xs) {
      h = elman_step(g, x, h, p);
      hs.push_back(h);
    }
    return hs;
  };
}

RecurrentPass lstm_pass(LstmParams p) {
  return [p = std::move(p)](Graph& g, std::span<const Tensor> xs) {
    std::vector<Tensor> hs;
    hs.reserve(xs.size());
    const std::size_t h = p.u_i.shape()[0];
    LstmState state{Tensor::zeros(Shape{h}), Tensor::zeros(Shape{h})};
    for (const Tensor& x : xs) {
      state = lstm_step(g, x, state, p);
      hs.push_back(state.h);
    }
    return hs;
  };
}

std::vector<Tensor> bidirectional(Graph& g, std::span<const Tensor> xs, const RecurrentPass& fwd,
                                  const RecurrentPass& bwd) {
  std::vector<Tensor> left = fwd(g, xs);
  std::vector<Tensor> reversed(xs.rbegin(), xs.rend());
  std::vector<Tensor> right = bwd(g, reversed);
  std::reverse(right.begin(), right.end());
  std::vector<Tensor> out;
  out.reserve(xs.size());
  for (std::size_t t = 0; t < xs.size(); ++t) out.push_back(g.concat({left[t], right[t]}));
  return out;
}

ElmanParams elman_params(const Model& m, const std::string& prefix) {
  return {m.param(prefix + "W"), m.param(prefix + "V"), m.config().elman_activation};
}

LstmParams lstm_params(const Model& m, const std::string& prefix) {
  auto p = [&](const char* name) { return m.param(prefix + name); };
  return {p("W_i"),    p("U_i"),    p("V_i"), p("b_i"), p("W_f"), p("U_f"),
          p("V_f"),    p("b_f"),    p("W_cand"), p("U_cand"), p("b_cand"),
          p("W_o"),    p("U_o"),    p("V_o"), p("b_o"), m.config().full_peepholes};
}

std::vector<Tensor> forward_logits(Graph& g, const Model& m, std::span<const std::size_t> ids) {
  if (ids.empty()) throw ContractError("forward on an empty sentence");
  const ModelConfig& c = m.config();
  const Tensor& table = m.param("embedding.E");
  std::vector<Tensor> xs = embed(g, table, ids);

  std::vector<Tensor> hs;
  const int layers = is_deep(c.architecture) ? 2 : 1;
  if (is_convolutional(c.architecture)) {
    Tensor pad = g.row(table, kPaddingId);
    hs = conv_layer(g, xs, pad, m.param("conv1.W_c"), c.conv_window);
    if (layers == 2) hs = conv_layer(g, hs, m.param("conv2.pad"), m.param("conv2.W_c"), c.conv_window);
  } else {
    hs = xs;
    for (int layer = 1; layer <= layers; ++layer) {
      const std::string base = std::string(is_lstm(c.architecture) ? "lstm" : "rnn") +
                               std::to_string(layer);
      if (is_lstm(c.architecture)) {
        hs = bidirectional(g, hs, lstm_pass(lstm_params(m, base + ".fwd.")),
                           lstm_pass(lstm_params(m, base + ".bwd.")));
      } else {
        hs = bidirectional(g, hs, elman_pass(elman_params(m, base + ".fwd.")),
                           elman_pass(elman_params(m, base + ".bwd.")));
      }
    }
  }

  const Tensor& hidden_w = m.param("hidden.W");
  const Tensor& hidden_b = m.param("hidden.b");
  const Tensor& out_w = m.param("out.W");
  std::vector<Tensor> logits;
  logits.reserve(hs.size());
  for (const Tensor& h : hs) {
    Tensor pre = g.tanh(g.add(g.matvec(hidden_w, h), hidden_b));
    logits.push_back(g.matvec(out_w, pre));
  }
  return logits;
}

std::vector<std::vector<double>> forward(const Model& m, std::span<const std::size_t> ids) {
  Graph g(GradMode::kNone);
  std::vector<std::vector<double>> probs;
  for (const Tensor& z : forward_logits(g, m, ids)) probs.push_back(softmax(z.values()));
  return probs;
}

SentenceLoss sentence_loss(Graph& g, const Model& m, std::span<const std::size_t> ids,
                           std::span<const int> labels) {
  if (ids.size() != labels.size()) {
    throw ContractError("sentence has " + std::to_string(ids.size()) + " tokens but " +
                        std::to_string(labels.size()) + " labels");
  }
  std::vector<Tensor> logits = forward_logits(g, m, ids);
  std::vector<Tensor> losses;
  SentenceLoss result;
  losses.reserve(logits.size());
  for (std::size_t t = 0; t < logits.size(); ++t) {
    if (labels[t] < 0) throw LabelError("negative label at token " + std::to_string(t));
    auto [probs, loss] = g.softmax_xent(logits[t], static_cast<std::size_t>(labels[t]));
    result.probs.emplace_back(probs.values().begin(), probs.values().end());
    losses.push_back(loss);
  }
  result.loss = g.scale(g.add(losses), 1.0 / static_cast<double>(losses.size()));
  return result;
}

}  // namespace ged
