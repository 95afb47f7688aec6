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

// JSON-over-HTTP inference endpoint.
//
//   POST /predict  {"text": string, "threshold"?: number}
//               -> {"tokens": [...], "probs_incorrect": [...], "labels": [...],
//                   "model_version": string}
//   GET  /health   {"status": "ok", "model_version": string}
//   POST /reload   re-reads the configured checkpoint and swaps it in
//
// Errors come back as {"error": message}: 400 for malformed JSON, a missing
// or empty text, or a non-numeric threshold; 413 when the text exceeds the
// configured maximum length in bytes.

#include <cstddef>
#include <memory>
#include <mutex>
#include <string>

#include "ged/checkpoint.hpp"
#include "ged/kv_config.hpp"

namespace ged {

struct ServeConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string checkpoint;
  std::size_t max_length = 10000;

  /// Keys: host, port, checkpoint, max_length. Throws ConfigError.
  static ServeConfig from_kv(const KeyValueConfig& kv);
  static ServeConfig load(const std::string& path);
};

/// Immutable model state shared by in-flight requests.
struct ModelSnapshot {
  Checkpoint checkpoint;
  std::string version;  // FNV-1a 64 of the checkpoint bytes, 16 hex digits
};

std::shared_ptr<const ModelSnapshot> make_snapshot(std::string_view checkpoint_bytes);
std::shared_ptr<const ModelSnapshot> load_snapshot(const std::string& path);

struct HttpReply {
  int status = 200;
  std::string body;
};

class PredictService {
 public:
  PredictService(std::shared_ptr<const ModelSnapshot> snapshot, std::size_t max_length);

  HttpReply predict(const std::string& request_body) const;
  HttpReply health() const;

  std::shared_ptr<const ModelSnapshot> snapshot() const;
  void swap(std::shared_ptr<const ModelSnapshot> next);

 private:
  mutable std::mutex mu_;
  std::shared_ptr<const ModelSnapshot> snapshot_;
  std::size_t max_length_;
};

/// Blocks serving `cfg.host:cfg.port` until stop() is called from another
/// thread or the process exits.
class HttpServer {
 public:
  HttpServer(PredictService& service, ServeConfig cfg);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds and serves. Returns false when the address cannot be bound.
  bool listen();
  /// Binds to an OS-chosen port on cfg.host and returns it, or -1.
  int bind_any_port();
  /// Serves on a socket bound by bind_any_port().
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ged
