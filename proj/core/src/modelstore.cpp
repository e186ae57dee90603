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

#include "mpx/modelstore.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mpx/errors.hpp"
#include "mpx/hash.hpp"

namespace mpx {

std::string_view to_string(ModelErrc code) {
  switch (code) {
    case ModelErrc::kIo: return "i/o error";
    case ModelErrc::kParse: return "parse error";
    case ModelErrc::kInvariant: return "invariant violation";
    case ModelErrc::kVersion: return "unsupported format version";
  }
  return "model error";
}

}  // namespace mpx

namespace mpx::modelstore {
namespace {

using nlohmann::ordered_json;
using boost::TreeNode;

ordered_json node_to_json(const std::vector<TreeNode>& nodes, std::size_t i) {
  const TreeNode& n = nodes[i];
  ordered_json out;
  if (n.is_leaf()) {
    out["leaf"] = n.weight;
    return out;
  }
  out["feature"] = n.feature;
  out["threshold"] = n.threshold;
  out["left"] = node_to_json(nodes, static_cast<std::size_t>(n.left));
  out["right"] = node_to_json(nodes, static_cast<std::size_t>(n.right));
  return out;
}

[[noreturn]] void fail(ModelErrc code, const std::string& where, const std::string& what) {
  throw ModelFormatError(code, where, what);
}

const ordered_json& member(const ordered_json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(ModelErrc::kParse, where, std::string("missing field '") + key + "'");
  return *it;
}

double finite_number(const ordered_json& v, const std::string& where) {
  if (!v.is_number()) fail(ModelErrc::kParse, where, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(ModelErrc::kInvariant, where, "number is not finite");
  return d;
}

long long integer(const ordered_json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(ModelErrc::kParse, where, "expected an integer");
  return v.get<long long>();
}

std::int32_t parse_node(const ordered_json& j, const std::string& where, std::size_t n_features,
                        std::vector<TreeNode>& nodes) {
  if (!j.is_object()) fail(ModelErrc::kParse, where, "tree node must be an object");
  const auto self = static_cast<std::int32_t>(nodes.size());
  nodes.emplace_back();

  if (j.contains("leaf")) {
    if (j.size() != 1) fail(ModelErrc::kParse, where, "leaf node has extra fields");
    nodes.back().weight = finite_number(j["leaf"], where + ".leaf");
    return self;
  }
  if (j.size() != 4) fail(ModelErrc::kParse, where, "internal node needs feature, threshold, left, right");
  const long long feature = integer(member(j, "feature", where), where + ".feature");
  if (feature < 0 || static_cast<unsigned long long>(feature) >= n_features) {
    fail(ModelErrc::kInvariant, where,
         "feature index " + std::to_string(feature) + " outside vocabulary of size " +
             std::to_string(n_features));
  }
  const double threshold = finite_number(member(j, "threshold", where), where + ".threshold");
  const std::int32_t left = parse_node(member(j, "left", where), where + ".left", n_features, nodes);
  const std::int32_t right = parse_node(member(j, "right", where), where + ".right", n_features, nodes);
  TreeNode& node = nodes[static_cast<std::size_t>(self)];
  node.feature = static_cast<std::int32_t>(feature);
  node.threshold = threshold;
  node.left = left;
  node.right = right;
  return self;
}

boost::TrainConfig parse_config(const ordered_json& j) {
  if (!j.is_object()) fail(ModelErrc::kParse, "config", "expected an object");
  boost::TrainConfig c;
  c.eta = finite_number(member(j, "eta", "config"), "config.eta");
  c.gamma = finite_number(member(j, "gamma", "config"), "config.gamma");
  c.lambda = finite_number(member(j, "lambda", "config"), "config.lambda");
  c.n_trees = static_cast<int>(integer(member(j, "n_trees", "config"), "config.n_trees"));
  c.max_depth = static_cast<int>(integer(member(j, "max_depth", "config"), "config.max_depth"));
  c.min_child_weight = finite_number(member(j, "min_child_weight", "config"), "config.min_child_weight");
  c.base_score = finite_number(member(j, "base_score", "config"), "config.base_score");
  try {
    c.validate();
  } catch (const ConfigError& e) {
    fail(ModelErrc::kInvariant, "config", e.what());
  }
  return c;
}

}  // namespace

std::string serialize(const boost::Ensemble& model) {
  ordered_json doc;
  doc["format_version"] = kFormatVersion;
  doc["vocabulary"] = model.vocabulary.tokens();
  ordered_json config;
  config["eta"] = model.config.eta;
  config["gamma"] = model.config.gamma;
  config["lambda"] = model.config.lambda;
  config["n_trees"] = model.config.n_trees;
  config["max_depth"] = model.config.max_depth;
  config["min_child_weight"] = model.config.min_child_weight;
  config["base_score"] = model.config.base_score;
  doc["config"] = std::move(config);
  doc["base_margin"] = model.base_margin;
  ordered_json trees = ordered_json::array();
  for (const auto& tree : model.trees) trees.push_back(node_to_json(tree.nodes(), 0));
  doc["trees"] = std::move(trees);
  return doc.dump(1) + "\n";
}

boost::Ensemble deserialize(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    fail(ModelErrc::kParse, "byte " + std::to_string(e.byte), e.what());
  }
  if (!doc.is_object()) fail(ModelErrc::kParse, "$", "model file must be a JSON object");

  const long long version = integer(member(doc, "format_version", "$"), "format_version");
  if (version != kFormatVersion) {
    fail(ModelErrc::kVersion, "format_version",
         "got " + std::to_string(version) + ", expected " + std::to_string(kFormatVersion));
  }

  boost::Ensemble model;
  const ordered_json& vocab = member(doc, "vocabulary", "$");
  if (!vocab.is_array()) fail(ModelErrc::kParse, "vocabulary", "expected an array");
  std::vector<std::string> tokens;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    if (!vocab[i].is_string()) fail(ModelErrc::kParse, "vocabulary[" + std::to_string(i) + "]", "expected a string");
    tokens.push_back(vocab[i].get<std::string>());
  }
  try {
    model.vocabulary = SymptomVocabulary(std::move(tokens));
  } catch (const ConfigError& e) {
    fail(ModelErrc::kInvariant, "vocabulary", e.what());
  }

  model.config = parse_config(member(doc, "config", "$"));
  model.base_margin = finite_number(member(doc, "base_margin", "$"), "base_margin");

  const ordered_json& trees = member(doc, "trees", "$");
  if (!trees.is_array()) fail(ModelErrc::kParse, "trees", "expected an array");
  if (trees.size() > static_cast<std::size_t>(model.config.n_trees)) {
    fail(ModelErrc::kInvariant, "trees",
         std::to_string(trees.size()) + " trees exceed n_trees = " + std::to_string(model.config.n_trees));
  }
  for (std::size_t t = 0; t < trees.size(); ++t) {
    const std::string where = "trees[" + std::to_string(t) + "]";
    std::vector<TreeNode> nodes;
    parse_node(trees[t], where, model.vocabulary.size(), nodes);
    boost::RegressionTree tree(std::move(nodes));
    if (tree.depth() > model.config.max_depth) {
      fail(ModelErrc::kInvariant, where,
           "depth " + std::to_string(tree.depth()) + " exceeds max_depth " +
               std::to_string(model.config.max_depth));
    }
    model.trees.push_back(std::move(tree));
  }
  return model;
}

void save(const boost::Ensemble& model, const std::filesystem::path& path) {
  const std::string bytes = serialize(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ModelErrc::kIo, path.string(), "cannot open for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ModelErrc::kIo, path.string(), "write failed");
}

boost::Ensemble load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ModelErrc::kIo, path.string(), "cannot open for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize(buf.str());
}

std::string model_id(std::string_view file_bytes) { return hex64(fnv1a64(file_bytes)); }

}  // namespace mpx::modelstore
