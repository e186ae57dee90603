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

#include <filesystem>
#include <string>
#include <string_view>

#include "mpx/booster.hpp"

namespace mpx::modelstore {

inline constexpr int kFormatVersion = 1;

// Model file layout (JSON, UTF-8):
//   {"format_version": 1,
//    "vocabulary": [token, ...],            index order
//    "config": {eta, gamma, lambda, n_trees, max_depth, min_child_weight, base_score},
//    "base_margin": number,
//    "trees": [node, ...]}
// where node is {"feature": int, "threshold": number, "left": node, "right": node}
// or {"leaf": number}. Leaf values are unshrunk; eta is applied when summing.
// Numbers use the shortest representation that round-trips binary64.
std::string serialize(const boost::Ensemble& model);

// Throws ModelFormatError: kParse for malformed JSON or wrong field types,
// kVersion for format_version != 1, kInvariant for out-of-range features,
// non-finite numbers, or trees deeper than config.max_depth.
boost::Ensemble deserialize(std::string_view text);

/// Throws ModelFormatError(kIo) on write failure.
void save(const boost::Ensemble& model, const std::filesystem::path& path);
boost::Ensemble load(const std::filesystem::path& path);

/// Content hash of serialized model bytes, used as the model id.
std::string model_id(std::string_view file_bytes);

}  // namespace mpx::modelstore
