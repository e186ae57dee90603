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

#include "mpx/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mpx/errors.hpp"
#include "mpx/hash.hpp"
#include "mpx/random.hpp"

namespace mpx::smote {

void SmoteConfig::validate() const {
  if (k_neighbors < 1) throw ConfigError("smote.k_neighbors must be >= 1");
  if (!(target_ratio > 0.0 && target_ratio <= 1.0)) {
    throw ConfigError("smote.target_ratio must lie in (0, 1]");
  }
}

namespace {

double squared_distance(const Sample& a, const Sample& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.features.size(); ++i) {
    const double diff = a.features[i] - b.features[i];
    d += diff * diff;
  }
  return d;
}

}  // namespace

std::vector<std::size_t> nearest_neighbors(std::span<const Sample> minority, std::size_t index,
                                           std::size_t k) {
  if (minority.size() < 2) throw ConfigError("nearest_neighbors needs at least two samples");
  if (index >= minority.size()) throw ConfigError("nearest_neighbors index out of range");

  std::vector<std::pair<double, std::size_t>> order;
  order.reserve(minority.size() - 1);
  for (std::size_t j = 0; j < minority.size(); ++j) {
    if (j == index) continue;
    order.emplace_back(squared_distance(minority[index], minority[j]), j);
  }
  const std::size_t take = std::min(k, order.size());
  // Pair ordering compares distance, then index.
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end());
  std::vector<std::size_t> out(take);
  for (std::size_t i = 0; i < take; ++i) out[i] = order[i].second;
  return out;
}

Sample synthesize(const Sample& x, const Sample& neighbor, double u) {
  Sample s;
  s.label = x.label;
  s.features.resize(x.features.size());
  for (std::size_t i = 0; i < x.features.size(); ++i) {
    s.features[i] = x.features[i] + u * (neighbor.features[i] - x.features[i]);
  }
  return s;
}

OversampleResult oversample(const Dataset& train, const SmoteConfig& config) {
  config.validate();
  const std::size_t positives = train.count_label(1);
  const std::size_t negatives = train.count_label(0);
  if (positives == 0 || negatives == 0) {
    throw TrainingError("oversample needs both classes, got " + std::to_string(positives) +
                        " positive and " + std::to_string(negatives) + " negative");
  }

  OversampleResult result;
  result.dataset = train;
  if (positives == negatives) return result;

  const int minority_label = positives < negatives ? 1 : 0;
  const std::size_t majority = std::max(positives, negatives);
  const std::size_t have = std::min(positives, negatives);
  const auto target =
      static_cast<std::size_t>(std::floor(config.target_ratio * static_cast<double>(majority)));
  if (target <= have) return result;
  const std::size_t deficit = target - have;

  std::vector<std::size_t> minority_index;  // position in `train`
  std::vector<Sample> minority;
  for (std::size_t i = 0; i < train.size(); ++i) {
    if (train.samples[i].label == minority_label) {
      minority_index.push_back(i);
      minority.push_back(train.samples[i]);
    }
  }

  Rng rng(config.seed);
  result.dataset.samples.reserve(train.size() + deficit);
  result.parentage.reserve(deficit);

  if (minority.size() == 1) {
    for (std::size_t n = 0; n < deficit; ++n) {
      result.parentage.push_back({result.dataset.size(), minority_index[0], minority_index[0], 0.0});
      result.dataset.samples.push_back(minority[0]);
    }
    return result;
  }

  const auto k = static_cast<std::size_t>(config.k_neighbors);
  std::vector<std::vector<std::size_t>> neighbors(minority.size());
  for (std::size_t i = 0; i < minority.size(); ++i) neighbors[i] = nearest_neighbors(minority, i, k);

  for (std::size_t n = 0; n < deficit; ++n) {
    const std::size_t parent = n % minority.size();
    const std::vector<std::size_t>& candidates = neighbors[parent];
    const std::size_t neighbor = candidates[rng.uniform_index(candidates.size())];
    const double u = rng.uniform01();
    result.parentage.push_back(
        {result.dataset.size(), minority_index[parent], minority_index[neighbor], u});
    result.dataset.samples.push_back(synthesize(minority[parent], minority[neighbor], u));
  }
  return result;
}

void write_parentage_csv(std::span<const Parentage> log, std::ostream& out) {
  out << "synthetic_index,parent_index,neighbor_index,u\n";
  for (const Parentage& p : log) {
    out << p.synthetic_index << ',' << p.parent_index << ',' << p.neighbor_index << ','
        << format_double(p.u) << '\n';
  }
}

}  // namespace mpx::smote
