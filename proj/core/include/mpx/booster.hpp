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
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mpx/dataset.hpp"

namespace mpx::boost {

/// Boosting hyperparameters. eta, gamma and n_trees default to the tuned
/// model settings; the rest are conventional defaults.
struct TrainConfig {
  double eta = 0.0991;
  double gamma = 0.0;
  double lambda = 1.0;
  int n_trees = 80;
  int max_depth = 6;
  double min_child_weight = 1.0;
  double base_score = 0.5;

  void validate() const;
  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

struct GradPair {
  double g = 0.0;
  double h = 0.0;
};

inline constexpr double kProbabilityClamp = 1e-15;

double sigmoid(double margin);
/// ln(p / (1 - p)).
double logit(double probability);

/// Gradient and hessian of the logistic loss with respect to the margin.
GradPair logistic_grad(int label, double probability);

/// Mean negative log-likelihood, probabilities clamped to [1e-15, 1-1e-15].
double log_loss(std::span<const int> labels, std::span<const double> margins);

/// -G / (H + lambda). Throws ConfigError when H + lambda <= 0.
double leaf_weight(double sum_grad, double sum_hess, double lambda);

double split_gain(double grad_left, double hess_left, double grad_right, double hess_right,
                  double lambda, double gamma);

/// Column-major dense feature storage.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  explicit FeatureMatrix(const Dataset& dataset);
  FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> column_major);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double at(std::size_t row, std::size_t col) const { return values_[col * rows_ + row]; }
  std::span<const double> column(std::size_t col) const {
    return {values_.data() + col * rows_, rows_};
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

struct SplitCandidate {
  std::size_t feature = 0;
  double threshold = 0.0;
  double gain = 0.0;
};

/// Midpoint between two adjacent distinct sorted values, nudged to `hi`
/// if rounding lands on `lo` so that `lo < threshold <= hi` always holds.
double boundary_threshold(double lo, double hi);

// Exact greedy search. For each feature the rows are ordered by value and
// every boundary between distinct adjacent values is scored with prefix
// gradient sums. Candidates whose either side has hessian below
// min_child_weight are skipped. Returns the best candidate when its gain is
// positive; ties prefer the lower feature index, then the lower threshold.
std::optional<SplitCandidate> find_best_split(std::span<const std::size_t> rows,
                                              const FeatureMatrix& features,
                                              std::span<const GradPair> grads,
                                              const TrainConfig& config);

/// Internal nodes route `value < threshold` left and everything else right.
struct TreeNode {
  std::int32_t feature = -1;
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  double weight = 0.0;

  bool is_leaf() const noexcept { return feature < 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

/// A regression tree stored as a flat node array in depth-first preorder;
/// node 0 is the root.
class RegressionTree {
 public:
  RegressionTree() = default;
  explicit RegressionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  std::size_t leaf_index(std::span<const double> features) const;
  /// Unshrunk leaf weight reached by `features`.
  double predict(std::span<const double> features) const { return nodes_[leaf_index(features)].weight; }
  double predict(const FeatureMatrix& features, std::size_t row) const;
  /// Edges on the longest root-to-leaf path; a lone leaf has depth 0.
  int depth() const;

  friend bool operator==(const RegressionTree&, const RegressionTree&) = default;

 private:
  std::vector<TreeNode> nodes_;
};

RegressionTree build_tree(std::span<const std::size_t> rows, const FeatureMatrix& features,
                          std::span<const GradPair> grads, const TrainConfig& config);

/// Additive model: margin = base_margin + eta * sum of tree outputs.
struct Ensemble {
  SymptomVocabulary vocabulary;
  TrainConfig config;
  double base_margin = 0.0;
  std::vector<RegressionTree> trees;
};

using ProgressSink = std::function<void(int round, double loss)>;

struct TrainResult {
  Ensemble model;
  /// Training log-loss after each round.
  std::vector<double> loss_trace;
};

// Throws TrainingError on single-class input or a non-finite loss, and
// ConfigError for an invalid config.
TrainResult train(const Dataset& train, const TrainConfig& config,
                  const ProgressSink& progress = {});

/// Throws DimensionError on a length mismatch.
double predict_margin(const Ensemble& model, std::span<const double> features);

struct Classification {
  int label = 0;
  double probability = 0.0;
};

/// label = 1 iff sigmoid(margin) >= 0.5.
Classification classify(const Ensemble& model, std::span<const double> features);

}  // namespace mpx::boost
