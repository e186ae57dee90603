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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mpx {

/// Ordered list of canonical symptom tokens. Position i is feature i.
///
/// Tokens must be unique and non-empty. Vocabularies produced by
/// build_vocabulary() are additionally sorted by byte order; a model file may
/// carry any order, which is why sortedness is not enforced here.
class SymptomVocabulary {
 public:
  SymptomVocabulary() = default;
  explicit SymptomVocabulary(std::vector<std::string> tokens);

  std::size_t size() const noexcept { return tokens_.size(); }
  bool empty() const noexcept { return tokens_.empty(); }
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  const std::string& operator[](std::size_t i) const { return tokens_[i]; }

  std::optional<std::size_t> index_of(std::string_view token) const;
  bool is_sorted() const;

  friend bool operator==(const SymptomVocabulary& a, const SymptomVocabulary& b) {
    return a.tokens_ == b.tokens_;
  }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Label 1 is monkeypox-positive.
struct Sample {
  std::vector<double> features;
  int label = 0;

  friend bool operator==(const Sample&, const Sample&) = default;
};

struct Dataset {
  SymptomVocabulary vocabulary;
  std::vector<Sample> samples;

  std::size_t size() const noexcept { return samples.size(); }
  std::size_t dimension() const noexcept { return vocabulary.size(); }
  std::size_t count_label(int label) const;

  // Throws DimensionError if any sample disagrees with the vocabulary size,
  // ConfigError if a label is not 0/1 or a feature lies outside [0,1].
  void validate() const;
};

// Byte-stable text form: header "label,<token>...", one row per sample,
// numbers in shortest round-trip form. Used for content hashing and golden
// comparisons.
std::string canonical_csv(const Dataset& dataset);

}  // namespace mpx
