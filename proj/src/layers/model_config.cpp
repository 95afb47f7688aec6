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

#include "ged/model_config.hpp"

#include <sstream>

#include "ged/error.hpp"
#include "ged/kv_config.hpp"

namespace ged {

std::string_view architecture_name(Architecture a) {
  switch (a) {
    case Architecture::kCnn:
      return "cnn";
    case Architecture::kDeepCnn:
      return "deep-cnn";
    case Architecture::kBiRnn:
      return "bi-rnn";
    case Architecture::kDeepBiRnn:
      return "deep-bi-rnn";
    case Architecture::kBiLstm:
      return "bi-lstm";
    case Architecture::kDeepBiLstm:
      return "deep-bi-lstm";
  }
  return "?";
}

Architecture parse_architecture(std::string_view name) {
  for (Architecture a : kAllArchitectures) {
    if (architecture_name(a) == name) return a;
  }
  throw ConfigError("unknown architecture '" + std::string(name) +
                    "' (expected cnn, deep-cnn, bi-rnn, deep-bi-rnn, bi-lstm or deep-bi-lstm)");
}

bool is_convolutional(Architecture a) {
  return a == Architecture::kCnn || a == Architecture::kDeepCnn;
}

bool is_lstm(Architecture a) {
  return a == Architecture::kBiLstm || a == Architecture::kDeepBiLstm;
}

bool is_deep(Architecture a) {
  return a == Architecture::kDeepCnn || a == Architecture::kDeepBiRnn ||
         a == Architecture::kDeepBiLstm;
}

void ModelConfig::validate() const {
  auto positive = [](std::size_t v, const char* name) {
    if (v == 0) throw ConfigError(std::string(name) + " must be positive");
  };
  positive(embedding_dim, "embedding_dim");
  positive(conv_output_dim, "conv_output_dim");
  positive(recurrent_dim, "recurrent_dim");
  positive(pre_output_dim, "pre_output_dim");
  positive(vocab_size, "vocab_size");
  if (num_labels < 2) throw ConfigError("num_labels must be at least 2");
  if (vocab_size <= kUnknownId) throw ConfigError("vocab_size must include padding and unk rows");
}

std::size_t ModelConfig::expected_parameter_count() const {
  const std::size_t d = embedding_dim, v = vocab_size, w = 2 * conv_window + 1;
  const std::size_t c = conv_output_dim, h = recurrent_dim, p = pre_output_dim, l = num_labels;
  auto head = [&](std::size_t in) { return p * in + p + l * p; };
  auto lstm = [&](std::size_t in) {
    const std::size_t peep = full_peepholes ? 3 * h * h : 3 * h;
    return 4 * h * in + 4 * h * h + 4 * h + peep;
  };
  switch (architecture) {
    case Architecture::kCnn:
      return v * d + c * w * d + head(c);
    case Architecture::kDeepCnn:
      return v * d + c * w * d + c + c * w * c + head(c);
    case Architecture::kBiRnn:
      return v * d + 2 * (h * d + h * h) + head(2 * h);
    case Architecture::kDeepBiRnn:
      return v * d + 2 * (h * d + h * h) + 2 * (h * 2 * h + h * h) + head(2 * h);
    case Architecture::kBiLstm:
      return v * d + 2 * lstm(d) + head(2 * h);
    case Architecture::kDeepBiLstm:
      return v * d + 2 * lstm(d) + 2 * lstm(2 * h) + head(2 * h);
  }
  return 0;
}

std::string ModelConfig::to_text() const {
  std::ostringstream os;
  os << "architecture=" << architecture_name(architecture) << '\n'
     << "embedding_dim=" << embedding_dim << '\n'
     << "conv_window=" << conv_window << '\n'
     << "conv_output_dim=" << conv_output_dim << '\n'
     << "recurrent_dim=" << recurrent_dim << '\n'
     << "pre_output_dim=" << pre_output_dim << '\n'
     << "num_labels=" << num_labels << '\n'
     << "vocab_size=" << vocab_size << '\n'
     << "elman_activation=" << (elman_activation == Activation::kSigmoid ? "sigmoid" : "tanh")
     << '\n'
     << "full_peepholes=" << (full_peepholes ? "true" : "false") << '\n';
  return os.str();
}

ModelConfig ModelConfig::from_text(std::string_view text) {
  const auto kv = KeyValueConfig::parse(text, "<model config>");
  kv.require_known({"architecture", "embedding_dim", "conv_window", "conv_output_dim",
                    "recurrent_dim", "pre_output_dim", "num_labels", "vocab_size",
                    "elman_activation", "full_peepholes"});
  ModelConfig c;
  c.architecture = parse_architecture(kv.get_string("architecture", "bi-lstm"));
  c.embedding_dim = kv.get_size("embedding_dim", c.embedding_dim);
  c.conv_window = kv.get_size("conv_window", c.conv_window);
  c.conv_output_dim = kv.get_size("conv_output_dim", c.conv_output_dim);
  c.recurrent_dim = kv.get_size("recurrent_dim", c.recurrent_dim);
  c.pre_output_dim = kv.get_size("pre_output_dim", c.pre_output_dim);
  c.num_labels = kv.get_size("num_labels", c.num_labels);
  c.vocab_size = kv.get_size("vocab_size", c.vocab_size);
  const auto act = kv.get_string("elman_activation", "sigmoid");
  if (act == "sigmoid") {
    c.elman_activation = Activation::kSigmoid;
  } else if (act == "tanh") {
    c.elman_activation = Activation::kTanh;
  } else {
    throw ConfigError("elman_activation must be sigmoid or tanh, got " + act);
  }
  c.full_peepholes = kv.get_bool("full_peepholes", false);
  return c;
}

}  // namespace ged
