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

#include <httplib.h>

#include "ged/service.hpp"

namespace ged {

struct HttpServer::Impl {
  PredictService& service;
  ServeConfig cfg;
  httplib::Server server;
};

namespace {

void respond(httplib::Response& res, const HttpReply& reply) {
  res.status = reply.status;
  res.set_content(reply.body, "application/json");
}

}  // namespace

HttpServer::HttpServer(PredictService& service, ServeConfig cfg)
    : impl_(new Impl{service, std::move(cfg), {}}) {
  auto& s = impl_->server;
  Impl* impl = impl_.get();
  s.Post("/predict", [impl](const httplib::Request& req, httplib::Response& res) {
    respond(res, impl->service.predict(req.body));
  });
  s.Get("/health", [impl](const httplib::Request&, httplib::Response& res) {
    respond(res, impl->service.health());
  });
  s.Post("/reload", [impl](const httplib::Request&, httplib::Response& res) {
    if (impl->cfg.checkpoint.empty()) {
      respond(res, {409, R"({"error":"no checkpoint path configured"})"});
      return;
    }
    try {
      impl->service.swap(load_snapshot(impl->cfg.checkpoint));
      respond(res, impl->service.health());
    } catch (const std::exception&) {
      // The previous snapshot stays live.
      respond(res, {500, R"({"error":"reload failed"})"});
    }
  });
  s.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr) {
    respond(res, {500, R"({"error":"internal error"})"});
  });
  s.set_payload_max_length(impl_->cfg.max_length * 4 + 4096);
}

HttpServer::~HttpServer() = default;

bool HttpServer::listen() { return impl_->server.listen(impl_->cfg.host, impl_->cfg.port); }

int HttpServer::bind_any_port() { return impl_->server.bind_to_any_port(impl_->cfg.host); }

bool HttpServer::listen_after_bind() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace ged
