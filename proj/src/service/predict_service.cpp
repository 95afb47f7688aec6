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
#include <fstream>
#include <iterator>

#include <json.hpp>

#include "ged/error.hpp"
#include "ged/service.hpp"
#include "ged/tokenizer.hpp"
#include "ged/train.hpp"

namespace ged {

using nlohmann::json;

ServeConfig ServeConfig::from_kv(const KeyValueConfig& kv) {
  kv.require_known({"host", "port", "checkpoint", "max_length"});
  ServeConfig c;
  c.host = kv.get_string("host", c.host);
  const std::size_t port = kv.get_size("port", static_cast<std::size_t>(c.port));
  if (port > 65535) throw ConfigError("port out of range: " + std::to_string(port));
  c.port = static_cast<int>(port);
  c.checkpoint = kv.get_string("checkpoint", c.checkpoint);
  c.max_length = kv.get_size("max_length", c.max_length);
  if (c.max_length == 0) throw ConfigError("max_length must be positive");
  return c;
}

ServeConfig ServeConfig::load(const std::string& path) { return from_kv(KeyValueConfig::load(path)); }

std::shared_ptr<const ModelSnapshot> make_snapshot(std::string_view bytes) {
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(fnv1a64({bytes.data(), bytes.size()})));
  return std::make_shared<const ModelSnapshot>(ModelSnapshot{deserialize_checkpoint(bytes), hex});
}

std::shared_ptr<const ModelSnapshot> load_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint " + path);
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return make_snapshot(bytes);
}

namespace {

HttpReply error_reply(int status, const std::string& message) {
  return {status, json{{"error", message}}.dump()};
}

}  // namespace

PredictService::PredictService(std::shared_ptr<const ModelSnapshot> snapshot, std::size_t max_length)
    : snapshot_(std::move(snapshot)), max_length_(max_length) {
  if (!snapshot_) throw ContractError("PredictService needs a model snapshot");
}

std::shared_ptr<const ModelSnapshot> PredictService::snapshot() const {
  std::lock_guard lock(mu_);
  return snapshot_;
}

void PredictService::swap(std::shared_ptr<const ModelSnapshot> next) {
  if (!next) throw ContractError("cannot swap in an empty snapshot");
  std::lock_guard lock(mu_);
  snapshot_ = std::move(next);
}

HttpReply PredictService::health() const {
  return {200, json{{"status", "ok"}, {"model_version", snapshot()->version}}.dump()};
}

HttpReply PredictService::predict(const std::string& request_body) const {
  json request = json::parse(request_body, nullptr, false);
  if (request.is_discarded() || !request.is_object()) return error_reply(400, "malformed JSON body");
  const auto text_it = request.find("text");
  if (text_it == request.end() || !text_it->is_string()) {
    return error_reply(400, "field 'text' must be a string");
  }
  const auto& text = text_it->get_ref<const std::string&>();
  if (text.size() > max_length_) {
    return error_reply(413, "text exceeds " + std::to_string(max_length_) + " bytes");
  }
  double threshold = 0.5;
  if (const auto t = request.find("threshold"); t != request.end()) {
    if (!t->is_number() || !std::isfinite(t->get<double>())) {
      return error_reply(400, "field 'threshold' must be a finite number");
    }
    threshold = t->get<double>();
  }
  const auto tokens = tokenize(text);
  if (tokens.empty()) return error_reply(400, "text is empty");

  const auto snap = snapshot();
  const Prediction p = ged::predict(snap->checkpoint.model, snap->checkpoint.vocab, tokens, threshold);
  json reply = {{"tokens", tokens},
                {"probs_incorrect", p.prob_incorrect},
                {"labels", p.labels},
                {"model_version", snap->version}};
  return {200, reply.dump()};
}

}  // namespace ged
