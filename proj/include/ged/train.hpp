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
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ged/corpus.hpp"
#include "ged/kv_config.hpp"
#include "ged/model.hpp"
#include "ged/vocabulary.hpp"

namespace ged {

struct TrainConfig {
  double learning_rate = 0.001;
  std::size_t batch_size = 64;  // sentences
  std::size_t max_epochs = 20;
  std::uint64_t seed = 1;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  /// Stop after this many epochs without a dev F0.5 improvement.
  std::size_t patience = 1000;
  /// Global gradient-norm clipping; 0 disables.
  double clip_norm = 0.0;
  bool freeze_embeddings = false;
  /// Decision threshold for dev evaluation.
  double threshold = 0.5;
  /// Stop once dev F0.5 (a fraction) reaches this value; 0 disables.
  double target_f05 = 0.0;

  /// Keys match the field names. Throws ConfigError for unknown keys.
  static TrainConfig from_kv(const KeyValueConfig& kv);
  static TrainConfig load(const std::string& path);
};

/// First and second moments per parameter plus the step counter.
struct AdamState {
  std::vector<std::vector<double>> m;
  std::vector<std::vector<double>> v;
  std::uint64_t t = 0;
};

AdamState make_adam_state(const std::vector<NamedTensor>& params);

/// One Adam update of every parameter from its accumulated gradient. Entries
/// whose `skip` flag is set are left untouched (and their moments unchanged).
/// Throws TrainingError naming the first parameter with a non-finite gradient,
/// before anything is modified.
void adam_step(const std::vector<NamedTensor>& params, AdamState& state, const TrainConfig& cfg,
               const std::vector<bool>& skip = {});

struct EncodedSentence {
  std::vector<std::size_t> ids;
  std::vector<int> labels;
};

std::vector<EncodedSentence> encode(const Corpus& corpus, const Vocabulary& vocab);

/// Mean over sentences of the per-sentence mean token cross-entropy.
double batch_loss(const Model& model, std::span<const EncodedSentence> batch);

/// Accumulates gradients of batch_loss into the model parameters and returns
/// the loss. Sentences are processed in order.
double accumulate_batch_gradients(const Model& model, std::span<const EncodedSentence> batch);

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double loss = 0.0;      // mean training loss over the epoch's sentences
  double dev_precision = 0.0;
  double dev_recall = 0.0;
  double dev_f05 = 0.0;
};

struct TrainResult {
  Model best;
  std::size_t best_epoch = 0;  // 0 when no epoch ran
  std::vector<EpochRecord> history;
  std::vector<std::string> warnings;
};

using EpochCallback = std::function<void(const EpochRecord&)>;

/// Seeded shuffling, mini-batch Adam and per-epoch dev evaluation; returns the
/// parameters of the epoch with the best dev F0.5. `model` should already be
/// initialized. Throws ContractError on empty corpora and TrainingError when
/// the loss diverges.
TrainResult train(Model model, const Corpus& train_corpus, const Corpus& dev_corpus,
                  const Vocabulary& vocab, const TrainConfig& cfg,
                  const EpochCallback& on_epoch = {});

/// "epoch,loss,dev_P,dev_R,dev_F05" with full-precision values.
std::string history_csv(const std::vector<EpochRecord>& history);

struct Prediction {
  std::vector<double> prob_incorrect;
  std::vector<int> labels;  // 1 iff prob_incorrect >= threshold
};

/// Throws ContractError on an empty sentence.
Prediction predict(const Model& model, std::span<const std::size_t> ids, double threshold = 0.5);
Prediction predict(const Model& model, const Vocabulary& vocab,
                   const std::vector<std::string>& tokens, double threshold = 0.5);

/// Labels every sentence of a corpus (tokens kept, labels replaced).
Corpus predict_corpus(const Model& model, const Vocabulary& vocab, const Corpus& corpus,
                      double threshold = 0.5);

}  // namespace ged
