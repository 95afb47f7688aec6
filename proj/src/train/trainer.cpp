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
#include <cstdio>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "ged/error.hpp"
#include "ged/layers.hpp"
#include "ged/metrics.hpp"
#include "ged/rng.hpp"
#include "ged/train.hpp"

namespace ged {

TrainConfig TrainConfig::from_kv(const KeyValueConfig& kv) {
  kv.require_known({"learning_rate", "batch_size", "max_epochs", "seed", "beta1", "beta2", "eps",
                    "patience", "clip_norm", "freeze_embeddings", "threshold", "target_f05"});
  TrainConfig c;
  c.learning_rate = kv.get_double("learning_rate", c.learning_rate);
  c.batch_size = kv.get_size("batch_size", c.batch_size);
  c.max_epochs = kv.get_size("max_epochs", c.max_epochs);
  c.seed = kv.get_size("seed", c.seed);
  c.beta1 = kv.get_double("beta1", c.beta1);
  c.beta2 = kv.get_double("beta2", c.beta2);
  c.eps = kv.get_double("eps", c.eps);
  c.patience = kv.get_size("patience", c.patience);
  c.clip_norm = kv.get_double("clip_norm", c.clip_norm);
  c.freeze_embeddings = kv.get_bool("freeze_embeddings", c.freeze_embeddings);
  c.threshold = kv.get_double("threshold", c.threshold);
  c.target_f05 = kv.get_double("target_f05", c.target_f05);
  if (c.batch_size == 0) throw ConfigError("batch_size must be positive");
  if (!(c.learning_rate > 0.0)) throw ConfigError("learning_rate must be positive");
  return c;
}

TrainConfig TrainConfig::load(const std::string& path) {
  return from_kv(KeyValueConfig::load(path));
}

std::vector<EncodedSentence> encode(const Corpus& corpus, const Vocabulary& vocab) {
  std::vector<EncodedSentence> out;
  out.reserve(corpus.size());
  for (const auto& s : corpus) {
    s.validate();
    out.push_back({vocab.encode(s.tokens), s.labels});
  }
  return out;
}

double batch_loss(const Model& model, std::span<const EncodedSentence> batch) {
  if (batch.empty()) throw ContractError("empty batch");
  double total = 0.0;
  for (const auto& s : batch) {
    Graph g(GradMode::kNone);
    total += sentence_loss(g, model, s.ids, s.labels).loss.item();
  }
  return total / static_cast<double>(batch.size());
}

double accumulate_batch_gradients(const Model& model, std::span<const EncodedSentence> batch) {
  if (batch.empty()) throw ContractError("empty batch");
  const double weight = 1.0 / static_cast<double>(batch.size());
  double total = 0.0;
  for (const auto& s : batch) {
    Graph g;
    auto result = sentence_loss(g, model, s.ids, s.labels);
    g.backward(result.loss, weight);
    total += result.loss.item();
  }
  return total * weight;
}

namespace {

std::string sentence_key(const LabeledSentence& s) {
  std::string key;
  for (const auto& t : s.tokens) {
    key += t;
    key += '\x1f';
  }
  return key;
}

void clip_gradients(const Model& model, double max_norm) {
  double sq = 0.0;
  for (const auto& p : model.parameters()) {
    for (double g : p.tensor.grad_view()) sq += g * g;
  }
  const double norm = std::sqrt(sq);
  if (norm <= max_norm || norm == 0.0) return;
  const double factor = max_norm / norm;
  for (const auto& p : model.parameters()) {
    Tensor t = p.tensor;
    if (!t.has_grad()) continue;
    for (double& g : t.grad()) g *= factor;
  }
}

}  // namespace

TrainResult train(Model model, const Corpus& train_corpus, const Corpus& dev_corpus,
                  const Vocabulary& vocab, const TrainConfig& cfg, const EpochCallback& on_epoch) {
  if (train_corpus.empty()) throw ContractError("training corpus is empty");
  if (dev_corpus.empty()) throw ContractError("development corpus is empty");
  if (cfg.batch_size == 0) throw ContractError("batch_size must be positive");

  TrainResult result{model.clone(), 0, {}, {}};

  std::unordered_set<std::string> train_keys;
  for (const auto& s : train_corpus) train_keys.insert(sentence_key(s));
  std::size_t overlap = 0;
  for (const auto& s : dev_corpus) overlap += train_keys.count(sentence_key(s));
  if (overlap > 0) {
    result.warnings.push_back(std::to_string(overlap) +
                              " development sentences also occur in the training data");
  }

  const auto train_set = encode(train_corpus, vocab);
  AdamState adam = make_adam_state(model.parameters());
  std::vector<bool> skip(model.parameters().size(), false);
  if (cfg.freeze_embeddings) {
    for (std::size_t k = 0; k < skip.size(); ++k) skip[k] = model.parameters()[k].name == "embedding.E";
  }

  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<EncodedSentence> batch;
  double best_f = -1.0;
  std::size_t since_best = 0;

  for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    Rng rng(derive_seed(cfg.seed, epoch));
    rng.shuffle(order);
    double epoch_loss = 0.0;
    std::size_t batch_index = 0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size, ++batch_index) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      batch.clear();
      for (std::size_t i = start; i < end; ++i) batch.push_back(train_set[order[i]]);
      model.zero_grad();
      const double loss = accumulate_batch_gradients(model, batch);
      if (!std::isfinite(loss)) {
        throw TrainingError("loss diverged at epoch " + std::to_string(epoch) + ", batch " +
                            std::to_string(batch_index));
      }
      if (cfg.clip_norm > 0.0) clip_gradients(model, cfg.clip_norm);
      adam_step(model.parameters(), adam, cfg, skip);
      epoch_loss += loss * static_cast<double>(batch.size());
    }

    const DetectionScores dev =
        detection_eval(predict_corpus(model, vocab, dev_corpus, cfg.threshold), dev_corpus);
    EpochRecord rec{epoch, epoch_loss / static_cast<double>(order.size()), dev.precision,
                    dev.recall, dev.f05};
    result.history.push_back(rec);
    if (on_epoch) on_epoch(rec);

    if (dev.f05 > best_f) {
      best_f = dev.f05;
      result.best.assign_values(model);
      result.best_epoch = epoch;
      since_best = 0;
    } else if (++since_best >= cfg.patience) {
      break;
    }
    if (cfg.target_f05 > 0.0 && dev.f05 >= cfg.target_f05) break;
  }
  return result;
}

std::string history_csv(const std::vector<EpochRecord>& history) {
  std::ostringstream os;
  os << "epoch,loss,dev_P,dev_R,dev_F05\n";
  char buf[160];
  for (const auto& r : history) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g\n", r.epoch, r.loss,
                  r.dev_precision, r.dev_recall, r.dev_f05);
    os << buf;
  }
  return os.str();
}

Prediction predict(const Model& model, std::span<const std::size_t> ids, double threshold) {
  if (ids.empty()) throw ContractError("predict on an empty sentence");
  Prediction p;
  for (const auto& row : forward(model, ids)) {
    const double prob = row[kIncorrect];
    p.prob_incorrect.push_back(prob);
    p.labels.push_back(prob >= threshold ? kIncorrect : kCorrect);
  }
  return p;
}

Prediction predict(const Model& model, const Vocabulary& vocab,
                   const std::vector<std::string>& tokens, double threshold) {
  const auto ids = vocab.encode(tokens);
  return predict(model, ids, threshold);
}

Corpus predict_corpus(const Model& model, const Vocabulary& vocab, const Corpus& corpus,
                      double threshold) {
  Corpus out;
  out.reserve(corpus.size());
  for (const auto& s : corpus) {
    out.push_back({s.tokens, predict(model, vocab, s.tokens, threshold).labels});
  }
  return out;
}

}  // namespace ged
