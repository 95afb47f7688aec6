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

#include "ged/corpus_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ged/error.hpp"

namespace ged {

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  return in;
}

bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace

std::vector<std::string> split_whitespace(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

Corpus read_tsv(std::istream& in, const std::string& source) {
  Corpus corpus;
  LabeledSentence current;
  std::string line;
  std::size_t line_no = 0;
  auto flush = [&] {
    if (!current.tokens.empty()) corpus.push_back(std::move(current));
    current = {};
  };
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) {
      flush();
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw ParseError(source, line_no, "expected exactly one TAB between token and label");
    }
    if (tab == 0) throw ParseError(source, line_no, "empty token");
    const std::string label = line.substr(tab + 1);
    int value;
    if (label == "c") {
      value = kCorrect;
    } else if (label == "i") {
      value = kIncorrect;
    } else {
      throw ParseError(source, line_no, "label must be 'c' or 'i', got '" + label + "'");
    }
    current.tokens.push_back(line.substr(0, tab));
    current.labels.push_back(value);
  }
  flush();
  return corpus;
}

Corpus read_tsv(const std::string& path) {
  auto in = open_in(path);
  return read_tsv(in, path);
}

void write_tsv(std::ostream& out, const Corpus& corpus) {
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    const auto& sent = corpus[s];
    sent.validate();
    if (sent.tokens.empty()) throw DataError("sentence " + std::to_string(s) + " is empty");
    for (std::size_t i = 0; i < sent.tokens.size(); ++i) {
      const auto& tok = sent.tokens[i];
      if (tok.empty() || tok.find_first_of("\t\r\n") != std::string::npos) {
        throw DataError("token " + std::to_string(i) + " of sentence " + std::to_string(s) +
                        " cannot be written to TSV");
      }
      out << tok << '\t' << (sent.labels[i] == kIncorrect ? 'i' : 'c') << '\n';
    }
    out << '\n';
  }
}

void write_tsv(const std::string& path, const Corpus& corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  write_tsv(out, corpus);
}

std::vector<SpanAnnotation> read_spans(std::istream& in, const std::string& source) {
  std::vector<SpanAnnotation> out;
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    SpanAnnotation a;
    const auto tab = line.find('\t');
    a.tokens = split_whitespace(line.substr(0, tab));
    if (tab != std::string::npos) {
      std::string list = line.substr(tab + 1);
      std::size_t pos = 0;
      while (pos < list.size()) {
        auto comma = list.find(',', pos);
        if (comma == std::string::npos) comma = list.size();
        const std::string item = list.substr(pos, comma - pos);
        pos = comma + 1;
        if (item.empty()) continue;
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw ParseError(source, line_no, "span must be start:end");
        Span s;
        auto parse = [&](std::string_view text, std::size_t& v) {
          auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
          if (ec != std::errc() || p != text.data() + text.size() || text.empty()) {
            throw ParseError(source, line_no, "bad span offset '" + std::string(text) + "'");
          }
        };
        parse(std::string_view(item).substr(0, colon), s.start);
        parse(std::string_view(item).substr(colon + 1), s.end);
        a.spans.push_back(s);
      }
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<SpanAnnotation> read_spans(const std::string& path) {
  auto in = open_in(path);
  return read_spans(in, path);
}

std::vector<std::vector<std::string>> read_sentences(std::istream& in) {
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (next_line(in, line)) out.push_back(split_whitespace(line));
  return out;
}

std::vector<std::vector<std::string>> read_sentences(const std::string& path) {
  auto in = open_in(path);
  return read_sentences(in);
}

}  // namespace ged
