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
#include <string>
#include <string_view>

namespace ged {

enum class Architecture { kCnn, kDeepCnn, kBiRnn, kDeepBiRnn, kBiLstm, kDeepBiLstm };

inline constexpr Architecture kAllArchitectures[] = {
    Architecture::kCnn,   Architecture::kDeepCnn,   Architecture::kBiRnn,
    Architecture::kDeepBiRnn, Architecture::kBiLstm, Architecture::kDeepBiLstm};

std::string_view architecture_name(Architecture a);
/// Accepts the names produced by architecture_name(). Throws ConfigError.
Architecture parse_architecture(std::string_view name);

bool is_convolutional(Architecture a);
bool is_lstm(Architecture a);
bool is_deep(Architecture a);

/// Nonlinearity of the Elman recurrence.
enum class Activation { kSigmoid, kTanh };

/// Vocabulary row reserved for padding; the convolution reads its embedding
/// for positions outside the sentence.
inline constexpr std::size_t kPaddingId = 0;
/// Vocabulary row for out-of-vocabulary tokens.
inline constexpr std::size_t kUnknownId = 1;

struct ModelConfig {
  Architecture architecture = Architecture::kBiLstm;
  std::size_t embedding_dim = 300;
  std::size_t conv_window = 3;  // tokens on either side of the target
  std::size_t conv_output_dim = 300;
  std::size_t recurrent_dim = 200;  // per direction
  std::size_t pre_output_dim = 50;
  std::size_t num_labels = 2;
  std::size_t vocab_size = 0;
  Activation elman_activation = Activation::kSigmoid;
  bool full_peepholes = false;

  /// Throws ConfigError on non-positive dimensions or num_labels < 2.
  void validate() const;

  /// Closed-form parameter count. With D = embedding_dim, V = vocab_size,
  /// w = 2 * conv_window + 1, C = conv_output_dim, H = recurrent_dim,
  /// P = pre_output_dim, L = num_labels and head = P*in + P + L*P:
  ///   cnn          V*D + C*w*D + head(C)
  ///   deep-cnn     cnn + C + C*w*C            (second-layer padding + weights)
  ///   bi-rnn       V*D + 2*(H*D + H*H) + head(2H)
  ///   deep-bi-rnn  bi-rnn + 2*(H*2H + H*H)
  ///   bi-lstm      V*D + 2*lstm(D) + head(2H)
  ///   deep-bi-lstm bi-lstm + 2*lstm(2H)
  /// where lstm(I) = 4*H*I + 4*H*H + 4*H + peep, peep = 3*H (diagonal) or
  /// 3*H*H (full).
  std::size_t expected_parameter_count() const;

  /// key=value lines, one per field.
  std::string to_text() const;
  static ModelConfig from_text(std::string_view text);

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

}  // namespace ged
