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
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "mpx/dataset.hpp"

namespace mpx::smote {

struct SmoteConfig {
  int k_neighbors = 5;
  /// Target minority/majority ratio; 1.0 balances the classes.
  double target_ratio = 1.0;
  std::uint64_t seed = 42;

  void validate() const;
};

// Indices of the min(k, n-1) nearest other points by Euclidean distance.
// Ties go to the lower index. Throws ConfigError when fewer than two points.
std::vector<std::size_t> nearest_neighbors(std::span<const Sample> minority, std::size_t index,
                                           std::size_t k);

/// x + u * (neighbor - x), carrying x's label.
Sample synthesize(const Sample& x, const Sample& neighbor, double u);

/// Synthetic sample provenance. Parent and neighbor index the input dataset;
/// synthetic_index is the position in the output dataset.
struct Parentage {
  std::size_t synthetic_index = 0;
  std::size_t parent_index = 0;
  std::size_t neighbor_index = 0;
  double u = 0.0;
};

struct OversampleResult {
  Dataset dataset;
  std::vector<Parentage> parentage;
};

// Output is the input sequence unchanged followed by synthetic minority
// samples, enough to reach floor(target_ratio * majority). Parents are taken
// round-robin over the minority in input order, each paired with a uniformly
// chosen one of its k nearest minority neighbors. A lone minority sample is
// duplicated. Throws TrainingError on single-class input.
OversampleResult oversample(const Dataset& train, const SmoteConfig& config);

/// CSV with header synthetic_index,parent_index,neighbor_index,u.
void write_parentage_csv(std::span<const Parentage> log, std::ostream& out);

}  // namespace mpx::smote
