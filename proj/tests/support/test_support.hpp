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

// Independent oracles and generators shared by the unit and acceptance
// suites. Nothing here calls the code path it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "mpx/booster.hpp"
#include "mpx/dataset.hpp"
#include "mpx/random.hpp"

namespace mpx::testing {

inline std::filesystem::path source_dir() { return MPX_SOURCE_DIR; }
inline std::filesystem::path fixture(const std::string& name) { return source_dir() / "data/fixtures" / name; }
inline std::filesystem::path golden_path(const std::string& name) { return source_dir() / "tests/golden" / name; }

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << bytes;
}

/// MPX_UPDATE_GOLDEN=1 rewrites golden files instead of comparing.
inline bool update_golden() {
  const char* v = std::getenv("MPX_UPDATE_GOLDEN");
  return v && std::string(v) == "1";
}

/// Returns the committed golden bytes, writing `actual` first in update mode.
inline std::string golden(const std::string& name, const std::string& actual) {
  if (update_golden()) write_file(golden_path(name), actual);
  return read_file(golden_path(name));
}

/// A unique scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& tag) {
  auto base = std::filesystem::temp_directory_path() /
              ("mpx_" + tag + "_" + std::to_string(::getpid()) + "_" +
               std::to_string(std::rand()));
  std::filesystem::create_directories(base);
  return base;
}

// ---------------------------------------------------------------------------
// Split-finding oracle: enumerate every feature and every boundary between
// distinct values, partition rows by the routing rule directly and sum each
// side separately.

struct OracleSplit {
  std::size_t feature = 0;
  double threshold = 0.0;
  double gain = 0.0;
};

inline std::optional<OracleSplit> brute_force_split(const std::vector<std::size_t>& rows,
                                                    const boost::FeatureMatrix& x,
                                                    const std::vector<boost::GradPair>& grads,
                                                    const boost::TrainConfig& config) {
  std::optional<OracleSplit> best;
  for (std::size_t f = 0; f < x.cols(); ++f) {
    std::vector<double> values;
    for (std::size_t r : rows) values.push_back(x.at(r, f));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
      double t = (values[i] + values[i + 1]) / 2.0;
      if (!(t > values[i])) t = values[i + 1];
      double gl = 0, hl = 0, gr = 0, hr = 0;
      for (std::size_t r : rows) {
        if (x.at(r, f) < t) {
          gl += grads[r].g;
          hl += grads[r].h;
        } else {
          gr += grads[r].g;
          hr += grads[r].h;
        }
      }
      if (hl < config.min_child_weight || hr < config.min_child_weight) continue;
      const double gain = boost::split_gain(gl, hl, gr, hr, config.lambda, config.gamma);
      if (!(gain > 0.0)) continue;
      const bool better = !best || gain > best->gain ||
                          (gain == best->gain &&
                           (f < best->feature || (f == best->feature && t < best->threshold)));
      if (better) best = OracleSplit{f, t, gain};
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Logistic loss as a function of the margin, in long double.

inline long double logistic_loss(int label, long double margin) {
  const long double p = 1.0L / (1.0L + std::exp(-margin));
  return label == 1 ? -std::log(p) : -std::log(1.0L - p);
}

inline long double logistic_first_derivative(int label, long double margin) {
  return (1.0L / (1.0L + std::exp(-margin))) - label;
}

template <typename F>
long double central_difference(F f, long double x, long double step) {
  return (f(x + step) - f(x - step)) / (2.0L * step);
}

// ---------------------------------------------------------------------------
// k-NN oracle: rank of j = number of points that precede it in
// (distance, index) order.

inline std::vector<std::size_t> brute_force_knn(const std::vector<Sample>& points, std::size_t query,
                                                std::size_t k) {
  auto dist = [&](std::size_t j) {
    double d = 0;
    for (std::size_t c = 0; c < points[query].features.size(); ++c) {
      d += (points[j].features[c] - points[query].features[c]) *
           (points[j].features[c] - points[query].features[c]);
    }
    return d;
  };
  std::vector<std::pair<std::size_t, std::size_t>> ranked;  // (rank, index)
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (j == query) continue;
    std::size_t rank = 0;
    for (std::size_t o = 0; o < points.size(); ++o) {
      if (o == query || o == j) continue;
      if (dist(o) < dist(j) || (dist(o) == dist(j) && o < j)) ++rank;
    }
    ranked.emplace_back(rank, j);
  }
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < std::min(k, ranked.size()); ++r) {
    for (auto [rank, j] : ranked) {
      if (rank == r) out.push_back(j);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generators.

inline SymptomVocabulary numbered_vocabulary(std::size_t n) {
  std::vector<std::string> tokens;
  for (std::size_t i = 0; i < n; ++i) {
    std::string t = "s";
    if (i < 10) t += "0";
    t += std::to_string(i);
    tokens.push_back(t);
  }
  return SymptomVocabulary(tokens);
}

/// Feature column styles: binary, quarter grid, continuous.
inline double feature_value(int style, Rng& rng) {
  switch (style) {
    case 0: return static_cast<double>(rng.uniform_index(2));
    case 1: return static_cast<double>(rng.uniform_index(5)) * 0.25;
    default: return rng.uniform01();
  }
}

// Labels come from a random logistic model over the features so the data has
// learnable structure.
inline Dataset random_dataset(Rng& rng, std::size_t rows, std::size_t cols) {
  Dataset d;
  d.vocabulary = numbered_vocabulary(cols);
  std::vector<int> style(cols);
  std::vector<double> coef(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    style[c] = static_cast<int>(rng.uniform_index(3));
    coef[c] = rng.uniform01() * 6.0 - 3.0;
  }
  for (std::size_t r = 0; r < rows; ++r) {
    Sample s;
    double z = -0.5;
    for (std::size_t c = 0; c < cols; ++c) {
      s.features.push_back(feature_value(style[c], rng));
      z += coef[c] * s.features.back();
    }
    s.label = rng.uniform01() < 1.0 / (1.0 + std::exp(-z)) ? 1 : 0;
    d.samples.push_back(std::move(s));
  }
  // Guarantee both classes.
  d.samples[0].label = 1;
  d.samples[1].label = 0;
  return d;
}

}  // namespace mpx::testing
