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
#include <stdexcept>
#include <string>

namespace ged {

/// Broad failure class, used by the CLI to pick an exit code.
enum class ErrorKind {
  kData,     // malformed or inconsistent input files / corpora
  kRuntime,  // contract violations, numerical failures, I/O
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what)
      : Error(ErrorKind::kRuntime, "shape error: " + what) {}
};

class ContractError : public Error {
 public:
  explicit ContractError(const std::string& what)
      : Error(ErrorKind::kRuntime, "contract error: " + what) {}
};

class LabelError : public Error {
 public:
  explicit LabelError(const std::string& what)
      : Error(ErrorKind::kData, "label error: " + what) {}
};

class VocabularyError : public Error {
 public:
  explicit VocabularyError(const std::string& what)
      : Error(ErrorKind::kData, "vocabulary error: " + what) {}
};

class AnnotationError : public Error {
 public:
  explicit AnnotationError(const std::string& what)
      : Error(ErrorKind::kData, "annotation error: " + what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what)
      : Error(ErrorKind::kData, "data error: " + what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ErrorKind::kData, "config error: " + what) {}
};

/// Parse failure with a 1-based line number (0 when not line oriented).
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(ErrorKind::kData, source + ":" + std::to_string(line) + ": parse error: " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class AlignmentError : public Error {
 public:
  AlignmentError(std::size_t index, const std::string& what)
      : Error(ErrorKind::kData, "alignment error at sentence " + std::to_string(index) + ": " + what),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class TrainingError : public Error {
 public:
  explicit TrainingError(const std::string& what)
      : Error(ErrorKind::kRuntime, "training error: " + what) {}
};

class CorrelationError : public Error {
 public:
  explicit CorrelationError(const std::string& what)
      : Error(ErrorKind::kData, "undefined correlation: " + what) {}
};

}  // namespace ged
