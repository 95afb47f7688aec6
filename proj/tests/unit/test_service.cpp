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

#include <doctest.h>

#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "ged/checkpoint.hpp"
#include "ged/error.hpp"
#include "ged/service.hpp"
#include "ged/tokenizer.hpp"
#include "ged/train.hpp"
#include "test_util.hpp"

using namespace ged;
using nlohmann::json;
using Tokens = std::vector<std::string>;

namespace {

Vocabulary small_vocab() {
  return Vocabulary::from_tokens({"<pad>", "<unk>", "the", "dog", "likes", "cats", ".", ",", "a",
                                  "is", "big", "he"});
}

std::string checkpoint_bytes(std::uint64_t seed) {
  const Model m = ged::testing::tiny_model(Architecture::kBiLstm, seed);
  return serialize_checkpoint(m, small_vocab());
}

}  // namespace

TEST_CASE("tokenizer") {
  CHECK(tokenize("The dog likes cats.") == Tokens{"The", "dog", "likes", "cats", "."});
  CHECK(tokenize("  \"Hello,\" he said!\n") == Tokens{"\"", "Hello", ",", "\"", "he", "said", "!"});
  CHECK(tokenize("don't e.g. ...") == Tokens{"don't", "e.g", ".", ".", ".", "."});
  CHECK(tokenize("").empty());
  CHECK(tokenize(" \t\n").empty());
  CHECK(tokenize("(x)") == Tokens{"(", "x", ")"});
}

TEST_CASE("serve config") {
  const auto c = ServeConfig::from_kv(KeyValueConfig::parse("port = 9000\ncheckpoint = m.bin\nmax_length = 50\n"));
  CHECK(c.port == 9000);
  CHECK(c.checkpoint == "m.bin");
  CHECK(c.max_length == 50);
  CHECK_THROWS_AS(ServeConfig::from_kv(KeyValueConfig::parse("port = 70000\n")), ConfigError);
  CHECK_THROWS_AS(ServeConfig::from_kv(KeyValueConfig::parse("colour = red\n")), ConfigError);
}

TEST_CASE("predict handler contract") {
  const std::string bytes = checkpoint_bytes(3);
  const auto snap = make_snapshot(bytes);
  CHECK(snap->version.size() == 16);
  PredictService service(snap, 64);

  SUBCASE("errors") {
    CHECK(service.predict(R"({"text": ""})").status == 400);
    CHECK(service.predict(R"({"text": "   "})").status == 400);
    CHECK(service.predict("{not json").status == 400);
    CHECK(service.predict(R"([1, 2])").status == 400);
    CHECK(service.predict(R"({"txt": "a"})").status == 400);
    CHECK(service.predict(R"({"text": 5})").status == 400);
    CHECK(service.predict(R"({"text": "a", "threshold": "high"})").status == 400);
    const auto big = service.predict(json{{"text", std::string(65, 'a')}}.dump());
    CHECK(big.status == 413);
    CHECK(json::parse(big.body).contains("error"));
  }

  SUBCASE("response shape and thresholding") {
    for (double thr : {0.0, 0.3, 0.5, 0.9}) {
      const auto r = service.predict(json{{"text", "The dog likes cats, he is big."}, {"threshold", thr}}.dump());
      REQUIRE(r.status == 200);
      const auto j = json::parse(r.body);
      const auto n = j["tokens"].size();
      CHECK(n == 9);
      CHECK(j["probs_incorrect"].size() == n);
      CHECK(j["labels"].size() == n);
      CHECK(j["model_version"] == snap->version);
      for (std::size_t t = 0; t < n; ++t) {
        const double p = j["probs_incorrect"][t];
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        CHECK(j["labels"][t] == (p >= thr ? 1 : 0));
      }
    }
  }

  SUBCASE("referentially transparent") {
    const std::string req = R"({"text": "the dog likes cats ."})";
    CHECK(service.predict(req).body == service.predict(req).body);
  }

  SUBCASE("identical probabilities to direct prediction") {
    const Tokens tokens = {"The", "dog", "likes", "unseen", "cats", "."};
    const auto direct = predict(snap->checkpoint.model, snap->checkpoint.vocab, tokens);
    const auto j = json::parse(service.predict(R"({"text": "The dog likes unseen cats."})").body);
    REQUIRE(j["probs_incorrect"].size() == tokens.size());
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      CHECK(j["probs_incorrect"][t].get<double>() == direct.prob_incorrect[t]);
      CHECK(j["tokens"][t] == tokens[t]);
    }
  }

  SUBCASE("hot swap changes the model version") {
    const auto other = make_snapshot(checkpoint_bytes(4));
    CHECK(other->version != snap->version);
    const auto held = service.snapshot();
    service.swap(other);
    CHECK(held->version == snap->version);  // in-flight snapshots stay valid
    CHECK(json::parse(service.health().body)["model_version"] == other->version);
  }
}

TEST_CASE("http endpoint") {
  const auto dir = std::filesystem::temp_directory_path();
  const std::string path = (dir / "ged_test_service.ckpt").string();
  {
    const Model m = ged::testing::tiny_model(Architecture::kCnn, 1);
    save_checkpoint(path, m, small_vocab());
  }
  ServeConfig cfg;
  cfg.host = "127.0.0.1";
  cfg.checkpoint = path;
  cfg.max_length = 100;
  PredictService service(load_snapshot(path), cfg.max_length);
  HttpServer server(service, cfg);
  const int port = server.bind_any_port();
  REQUIRE(port > 0);
  std::thread worker([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto ok = client.Post("/predict", R"({"text": "the dog likes cats."})", "application/json");
  REQUIRE(ok);
  CHECK(ok->status == 200);
  const auto j = json::parse(ok->body);
  CHECK(j["tokens"].size() == 5);
  CHECK(ok->body == service.predict(R"({"text": "the dog likes cats."})").body);

  auto empty = client.Post("/predict", R"({"text": ""})", "application/json");
  REQUIRE(empty);
  CHECK(empty->status == 400);
  auto bad = client.Post("/predict", "{", "application/json");
  REQUIRE(bad);
  CHECK(bad->status == 400);
  auto big = client.Post("/predict", json{{"text", std::string(101, 'x')}}.dump(), "application/json");
  REQUIRE(big);
  CHECK(big->status == 413);

  auto health = client.Get("/health");
  REQUIRE(health);
  CHECK(health->status == 200);
  const std::string before = json::parse(health->body)["model_version"];

  {
    const Model m = ged::testing::tiny_model(Architecture::kCnn, 2);
    save_checkpoint(path, m, small_vocab());
  }
  auto reload = client.Post("/reload", "", "application/json");
  REQUIRE(reload);
  CHECK(reload->status == 200);
  CHECK(json::parse(reload->body)["model_version"] != before);

  server.stop();
  worker.join();
  std::filesystem::remove(path);
}
