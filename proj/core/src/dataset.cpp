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

#include "mpx/dataset.hpp"

#include <algorithm>

#include "mpx/csv.hpp"
#include "mpx/errors.hpp"
#include "mpx/hash.hpp"

namespace mpx {

SymptomVocabulary::SymptomVocabulary(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  index_.reserve(tokens_.size());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (tokens_[i].empty()) throw ConfigError("vocabulary token " + std::to_string(i) + " is empty");
    if (!index_.emplace(tokens_[i], i).second) {
      throw ConfigError("duplicate vocabulary token '" + tokens_[i] + "'");
    }
  }
}

std::optional<std::size_t> SymptomVocabulary::index_of(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool SymptomVocabulary::is_sorted() const { return std::is_sorted(tokens_.begin(), tokens_.end()); }

std::size_t Dataset::count_label(int label) const {
  return static_cast<std::size_t>(std::count_if(
      samples.begin(), samples.end(), [label](const Sample& s) { return s.label == label; }));
}

void Dataset::validate() const {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Sample& s = samples[i];
    if (s.features.size() != vocabulary.size()) {
      throw DimensionError("sample " + std::to_string(i) + " has " +
                           std::to_string(s.features.size()) + " features, vocabulary has " +
                           std::to_string(vocabulary.size()));
    }
    if (s.label != 0 && s.label != 1) {
      throw ConfigError("sample " + std::to_string(i) + " has label " + std::to_string(s.label));
    }
    for (double v : s.features) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw ConfigError("sample " + std::to_string(i) + " has feature outside [0,1]");
      }
    }
  }
}

std::string canonical_csv(const Dataset& dataset) {
  csv::Row header{"label"};
  header.insert(header.end(), dataset.vocabulary.tokens().begin(), dataset.vocabulary.tokens().end());
  std::string out = csv::format_row(header);
  out.push_back('\n');
  for (const Sample& s : dataset.samples) {
    out += std::to_string(s.label);
    for (double v : s.features) {
      out.push_back(',');
      out += format_double(v);
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace mpx
