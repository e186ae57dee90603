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

#include "mpx/booster.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mpx/errors.hpp"

namespace mpx::boost {

void TrainConfig::validate() const {
  if (!(eta > 0.0 && eta <= 1.0)) throw ConfigError("train.eta must lie in (0, 1]");
  if (!(gamma >= 0.0)) throw ConfigError("train.gamma must be >= 0");
  if (!(lambda >= 0.0)) throw ConfigError("train.lambda must be >= 0");
  if (n_trees < 1) throw ConfigError("train.n_trees must be >= 1");
  if (max_depth < 1) throw ConfigError("train.max_depth must be >= 1");
  if (!(min_child_weight >= 0.0)) throw ConfigError("train.min_child_weight must be >= 0");
  if (!(base_score > 0.0 && base_score < 1.0)) throw ConfigError("train.base_score must lie in (0, 1)");
}

double sigmoid(double margin) { return 1.0 / (1.0 + std::exp(-margin)); }

double logit(double probability) { return std::log(probability / (1.0 - probability)); }

GradPair logistic_grad(int label, double probability) {
  return {probability - static_cast<double>(label), probability * (1.0 - probability)};
}

double log_loss(std::span<const int> labels, std::span<const double> margins) {
  if (labels.size() != margins.size()) throw DimensionError("log_loss: length mismatch");
  if (labels.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double p = std::clamp(sigmoid(margins[i]), kProbabilityClamp, 1.0 - kProbabilityClamp);
    total -= labels[i] == 1 ? std::log(p) : std::log(1.0 - p);
  }
  return total / static_cast<double>(labels.size());
}

double leaf_weight(double sum_grad, double sum_hess, double lambda) {
  const double denom = sum_hess + lambda;
  if (!(denom > 0.0)) throw ConfigError("leaf_weight: H + lambda must be positive");
  return -sum_grad / denom;
}

double split_gain(double grad_left, double hess_left, double grad_right, double hess_right,
                  double lambda, double gamma) {
  const double grad = grad_left + grad_right;
  const double hess = hess_left + hess_right;
  return 0.5 * (grad_left * grad_left / (hess_left + lambda) +
                grad_right * grad_right / (hess_right + lambda) - grad * grad / (hess + lambda)) -
         gamma;
}

FeatureMatrix::FeatureMatrix(const Dataset& dataset)
    : rows_(dataset.size()), cols_(dataset.dimension()), values_(rows_ * cols_) {
  for (std::size_t r = 0; r < rows_; ++r) {
    const auto& f = dataset.samples[r].features;
    if (f.size() != cols_) throw DimensionError("sample " + std::to_string(r) + " has wrong dimension");
    for (std::size_t c = 0; c < cols_; ++c) values_[c * rows_ + r] = f[c];
  }
}

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> column_major)
    : rows_(rows), cols_(cols), values_(std::move(column_major)) {
  if (values_.size() != rows_ * cols_) throw DimensionError("FeatureMatrix: size mismatch");
}

double boundary_threshold(double lo, double hi) {
  const double mid = std::midpoint(lo, hi);
  return mid > lo ? mid : hi;
}

std::optional<SplitCandidate> find_best_split(std::span<const std::size_t> rows,
                                              const FeatureMatrix& features,
                                              std::span<const GradPair> grads,
                                              const TrainConfig& config) {
  if (rows.size() < 2) return std::nullopt;

  double grad_total = 0.0;
  double hess_total = 0.0;
  for (std::size_t r : rows) {
    grad_total += grads[r].g;
    hess_total += grads[r].h;
  }

  std::optional<SplitCandidate> best;
  std::vector<std::size_t> order(rows.begin(), rows.end());
  for (std::size_t f = 0; f < features.cols(); ++f) {
    const std::span<const double> column = features.column(f);
    std::copy(rows.begin(), rows.end(), order.begin());
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return column[a] < column[b]; });

    double grad_left = 0.0;
    double hess_left = 0.0;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      grad_left += grads[order[i]].g;
      hess_left += grads[order[i]].h;
      const double lo = column[order[i]];
      const double hi = column[order[i + 1]];
      if (!(lo < hi)) continue;

      const double grad_right = grad_total - grad_left;
      const double hess_right = hess_total - hess_left;
      if (hess_left < config.min_child_weight || hess_right < config.min_child_weight) continue;
      if (!(hess_left + config.lambda > 0.0) || !(hess_right + config.lambda > 0.0)) continue;

      const double gain =
          split_gain(grad_left, hess_left, grad_right, hess_right, config.lambda, config.gamma);
      // Strict comparison keeps the earliest (feature, threshold) on ties.
      if (gain > (best ? best->gain : 0.0)) best = SplitCandidate{f, boundary_threshold(lo, hi), gain};
    }
  }
  return best;
}

std::size_t RegressionTree::leaf_index(std::span<const double> features) const {
  std::size_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const TreeNode& n = nodes_[i];
    i = static_cast<std::size_t>(features[static_cast<std::size_t>(n.feature)] < n.threshold ? n.left
                                                                                              : n.right);
  }
  return i;
}

double RegressionTree::predict(const FeatureMatrix& features, std::size_t row) const {
  std::size_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const TreeNode& n = nodes_[i];
    i = static_cast<std::size_t>(
        features.at(row, static_cast<std::size_t>(n.feature)) < n.threshold ? n.left : n.right);
  }
  return nodes_[i].weight;
}

int RegressionTree::depth() const {
  if (nodes_.empty()) return 0;
  int deepest = 0;
  std::vector<std::pair<std::size_t, int>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [i, d] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, d);
    if (!nodes_[i].is_leaf()) {
      stack.emplace_back(static_cast<std::size_t>(nodes_[i].left), d + 1);
      stack.emplace_back(static_cast<std::size_t>(nodes_[i].right), d + 1);
    }
  }
  return deepest;
}

namespace {

std::int32_t grow(std::vector<std::size_t> rows, int depth, const FeatureMatrix& features,
                  std::span<const GradPair> grads, const TrainConfig& config,
                  std::vector<TreeNode>& nodes) {
  const auto self = static_cast<std::int32_t>(nodes.size());
  nodes.emplace_back();

  std::optional<SplitCandidate> split;
  if (depth < config.max_depth) split = find_best_split(rows, features, grads, config);

  if (!split) {
    double grad = 0.0;
    double hess = 0.0;
    for (std::size_t r : rows) {
      grad += grads[r].g;
      hess += grads[r].h;
    }
    // A node without curvature (lambda = 0, saturated probabilities) stays flat.
    nodes[static_cast<std::size_t>(self)].weight =
        hess + config.lambda > 0.0 ? leaf_weight(grad, hess, config.lambda) : 0.0;
    return self;
  }

  const std::span<const double> column = features.column(split->feature);
  std::vector<std::size_t> left_rows;
  std::vector<std::size_t> right_rows;
  for (std::size_t r : rows) (column[r] < split->threshold ? left_rows : right_rows).push_back(r);
  rows.clear();
  rows.shrink_to_fit();

  const std::int32_t left = grow(std::move(left_rows), depth + 1, features, grads, config, nodes);
  const std::int32_t right = grow(std::move(right_rows), depth + 1, features, grads, config, nodes);
  TreeNode& node = nodes[static_cast<std::size_t>(self)];
  node.feature = static_cast<std::int32_t>(split->feature);
  node.threshold = split->threshold;
  node.left = left;
  node.right = right;
  return self;
}

void check_dimension(const Ensemble& model, std::span<const double> features) {
  if (features.size() != model.vocabulary.size()) {
    throw DimensionError("feature vector has " + std::to_string(features.size()) +
                         " entries, model vocabulary has " + std::to_string(model.vocabulary.size()));
  }
}

}  // namespace

RegressionTree build_tree(std::span<const std::size_t> rows, const FeatureMatrix& features,
                          std::span<const GradPair> grads, const TrainConfig& config) {
  std::vector<TreeNode> nodes;
  grow(std::vector<std::size_t>(rows.begin(), rows.end()), 0, features, grads, config, nodes);
  return RegressionTree(std::move(nodes));
}

TrainResult train(const Dataset& train, const TrainConfig& config, const ProgressSink& progress) {
  config.validate();
  const std::size_t positives = train.count_label(1);
  const std::size_t negatives = train.count_label(0);
  if (positives == 0 || negatives == 0) {
    throw TrainingError("training needs both classes, got " + std::to_string(positives) +
                        " positive and " + std::to_string(negatives) + " negative");
  }

  const FeatureMatrix features(train);
  const std::size_t n = train.size();
  std::vector<std::size_t> rows(n);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = train.samples[i].label;

  TrainResult result;
  result.model.vocabulary = train.vocabulary;
  result.model.config = config;
  result.model.base_margin = logit(config.base_score);
  result.model.trees.reserve(static_cast<std::size_t>(config.n_trees));
  result.loss_trace.reserve(static_cast<std::size_t>(config.n_trees));

  std::vector<double> margins(n, result.model.base_margin);
  std::vector<GradPair> grads(n);
  for (int round = 0; round < config.n_trees; ++round) {
    for (std::size_t i = 0; i < n; ++i) grads[i] = logistic_grad(labels[i], sigmoid(margins[i]));
    RegressionTree tree = build_tree(rows, features, grads, config);
    for (std::size_t i = 0; i < n; ++i) margins[i] += config.eta * tree.predict(features, i);
    result.model.trees.push_back(std::move(tree));

    const double loss = log_loss(labels, margins);
    if (!std::isfinite(loss)) {
      throw TrainingError("non-finite training loss at round " + std::to_string(round));
    }
    result.loss_trace.push_back(loss);
    if (progress) progress(round, loss);
  }
  return result;
}

double predict_margin(const Ensemble& model, std::span<const double> features) {
  check_dimension(model, features);
  double sum = 0.0;
  for (const RegressionTree& tree : model.trees) sum += tree.predict(features);
  return model.base_margin + model.config.eta * sum;
}

Classification classify(const Ensemble& model, std::span<const double> features) {
  const double p = sigmoid(predict_margin(model, features));
  return {p >= 0.5 ? 1 : 0, p};
}

}  // namespace mpx::boost
