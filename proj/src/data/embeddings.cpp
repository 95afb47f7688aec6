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

#include "ged/embeddings.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <string_view>
#include <unordered_map>

#include "ged/error.hpp"
#include "ged/model_config.hpp"

namespace ged {

namespace {

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& v) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && p == s.data() + s.size();
}

}  // namespace

PretrainedReport load_pretrained(std::istream& in, const Vocabulary& vocab, Tensor& table,
                                 const std::string& source) {
  if (table.shape().rank() != 2 || table.shape()[0] != vocab.size()) {
    throw ConfigError("embedding table " + table.shape().str() + " does not match vocabulary of " +
                      std::to_string(vocab.size()));
  }
  const std::size_t dim = table.shape()[1];
  PretrainedReport report;
  std::unordered_map<std::size_t, std::size_t> seen;  // row -> line number
  std::string line;
  std::size_t line_no = 0;
  auto values = table.values();
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto f = fields(line);
    if (f.empty()) continue;
    if (line_no == 1 && f.size() == 2) {
      std::size_t count = 0, header_dim = 0;
      if (parse_number(f[0], count) && parse_number(f[1], header_dim)) {
        if (header_dim != dim) {
          throw ConfigError(source + ": vectors have dimension " + std::to_string(header_dim) +
                            " but the model expects " + std::to_string(dim));
        }
        continue;
      }
    }
    if (f.size() != dim + 1) {
      if (report.lines_read == 0 && f.size() >= 2) {
        throw ConfigError(source + ": vectors have dimension " + std::to_string(f.size() - 1) +
                          " but the model expects " + std::to_string(dim));
      }
      throw ParseError(source, line_no,
                       "expected a token and " + std::to_string(dim) + " values, got " +
                           std::to_string(f.size()) + " fields");
    }
    std::vector<double> row(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      if (!parse_number(f[k + 1], row[k])) {
        throw ParseError(source, line_no, "bad number '" + std::string(f[k + 1]) + "'");
      }
    }
    ++report.lines_read;
    const std::string token = lowercase(f[0]);
    if (!vocab.contains(token) || vocab.id(token) == kUnknownId || vocab.id(token) == kPaddingId) {
      continue;
    }
    const std::size_t id = vocab.id(token);
    auto [it, inserted] = seen.emplace(id, line_no);
    if (!inserted) {
      report.warnings.push_back(source + ":" + std::to_string(line_no) + ": '" + token +
                                "' already set on line " + std::to_string(it->second) +
                                "; using the later vector");
      it->second = line_no;
    }
    std::copy(row.begin(), row.end(), values.begin() + static_cast<std::ptrdiff_t>(id * dim));
  }
  report.rows_loaded = seen.size();
  report.coverage = static_cast<double>(seen.size()) / static_cast<double>(vocab.size());
  return report;
}

PretrainedReport load_pretrained(const std::string& path, const Vocabulary& vocab, Tensor& table) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  return load_pretrained(in, vocab, table, path);
}

}  // namespace ged
