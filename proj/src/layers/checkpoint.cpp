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

#include "ged/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "ged/error.hpp"

namespace ged {

namespace {

constexpr char kMagic[8] = {'G', 'E', 'D', 'M', 'O', 'D', 'E', 'L'};

class Writer {
 public:
  void bytes(std::string_view s) { buf_.append(s); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    bytes(s);
  }
  std::string& buffer() { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  std::string_view bytes(std::size_t n) {
    if (data_.size() - pos_ < n) throw DataError("checkpoint truncated at byte " + std::to_string(pos_));
    auto out = data_.substr(pos_, n);
    pos_ += n;
    return out;
  }
  std::uint32_t u32() {
    auto b = bytes(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(static_cast<unsigned char>(b[i])) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    auto b = bytes(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(static_cast<unsigned char>(b[i])) << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() { return std::string(bytes(u32())); }
  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

}  // namespace

std::uint64_t fnv1a64(std::span<const char> bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string serialize_checkpoint(const Model& model, const Vocabulary& vocab) {
  if (model.config().vocab_size != vocab.size()) {
    throw ContractError("model vocab_size " + std::to_string(model.config().vocab_size) +
                        " does not match vocabulary of " + std::to_string(vocab.size()));
  }
  Writer w;
  w.bytes(std::string_view(kMagic, sizeof kMagic));
  w.u32(kCheckpointVersion);
  w.str(model.config().to_text());
  w.u32(static_cast<std::uint32_t>(vocab.size()));
  for (const auto& t : vocab.tokens()) w.str(t);
  w.u32(static_cast<std::uint32_t>(model.parameters().size()));
  for (const auto& [name, t] : model.parameters()) {
    w.str(name);
    w.u32(static_cast<std::uint32_t>(t.shape().rank()));
    for (std::size_t d : t.shape().dims()) w.u64(d);
    for (double v : t.values()) w.f64(v);
  }
  const std::uint64_t sum = fnv1a64(w.buffer());
  w.u64(sum);
  return std::move(w.buffer());
}

Checkpoint deserialize_checkpoint(std::string_view bytes) {
  if (bytes.size() < sizeof kMagic + 12) throw DataError("checkpoint too short");
  const std::string_view body = bytes.substr(0, bytes.size() - 8);
  Reader tail(bytes.substr(bytes.size() - 8));
  if (tail.u64() != fnv1a64(body)) throw DataError("checkpoint checksum mismatch");

  Reader r(body);
  if (r.bytes(sizeof kMagic) != std::string_view(kMagic, sizeof kMagic)) {
    throw DataError("not a checkpoint (bad magic)");
  }
  const std::uint32_t version = r.u32();
  if (version != kCheckpointVersion) {
    throw DataError("unsupported checkpoint version " + std::to_string(version));
  }
  ModelConfig config = ModelConfig::from_text(r.str());
  std::vector<std::string> tokens(r.u32());
  for (auto& t : tokens) t = r.str();
  Vocabulary vocab = Vocabulary::from_tokens(std::move(tokens));
  if (vocab.size() != config.vocab_size) throw DataError("checkpoint vocabulary size mismatch");

  Model model(config);
  const std::uint32_t count = r.u32();
  if (count != model.parameters().size()) {
    throw DataError("checkpoint has " + std::to_string(count) + " parameters, architecture needs " +
                    std::to_string(model.parameters().size()));
  }
  for (const auto& [name, t] : model.parameters()) {
    const std::string stored = r.str();
    if (stored != name) throw DataError("expected parameter '" + name + "', found '" + stored + "'");
    std::vector<std::size_t> dims(r.u32());
    for (auto& d : dims) d = static_cast<std::size_t>(r.u64());
    if (dims != t.shape().dims()) throw DataError("shape mismatch for parameter '" + name + "'");
    Tensor handle = t;
    for (double& v : handle.values()) v = r.f64();
  }
  if (r.remaining() != 0) throw DataError("trailing bytes in checkpoint");
  return {std::move(model), std::move(vocab)};
}

void save_checkpoint(const std::string& path, const Model& model, const Vocabulary& vocab) {
  const std::string bytes = serialize_checkpoint(model, vocab);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("write failed for " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return deserialize_checkpoint(ss.str());
}

}  // namespace ged
