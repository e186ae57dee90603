// Copyright 2026 The mpx Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mpx {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configuration value violates its documented range.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Feature vector length does not match the model or dataset vocabulary.
class DimensionError : public Error {
 public:
  using Error::Error;
};

enum class IngestErrc {
  kMissingFile,
  kMissingColumn,
  kMalformedCsv,
  kEmptyVocabulary,
  kNoUsableRecords,
  kSingleClass,
  kClassTooSmall,
};

std::string_view to_string(IngestErrc code);

class IngestError : public Error {
 public:
  IngestError(IngestErrc code, std::string detail)
      : Error(std::string(to_string(code)) + ": " + detail),
        code_(code),
        detail_(std::move(detail)) {}

  IngestErrc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  IngestErrc code_;
  std::string detail_;
};

/// Training refused its input, or hit a numerical fault.
class TrainingError : public Error {
 public:
  using Error::Error;
};

enum class ModelErrc {
  kIo,
  kParse,
  kInvariant,
  kVersion,
};

std::string_view to_string(ModelErrc code);

/// Model file problems. `location()` is a path into the document such as
/// "trees[3].left.right", or the file path for I/O failures.
class ModelFormatError : public Error {
 public:
  ModelFormatError(ModelErrc code, std::string location, std::string message)
      : Error(std::string(to_string(code)) + " at " + location + ": " + message),
        code_(code),
        location_(std::move(location)) {}

  ModelErrc code() const noexcept { return code_; }
  const std::string& location() const noexcept { return location_; }

 private:
  ModelErrc code_;
  std::string location_;
};

}  // namespace mpx
