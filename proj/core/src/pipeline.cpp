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

#include "mpx/pipeline.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mpx/errors.hpp"
#include "mpx/hash.hpp"
#include "mpx/modelstore.hpp"
#include "toml.hpp"

namespace mpx::pipeline {

std::string_view to_string(SmoteOrder order) {
  return order == SmoteOrder::kAfterSplit ? "after_split" : "before_split";
}

SmoteOrder parse_smote_order(std::string_view text) {
  if (text == "after_split") return SmoteOrder::kAfterSplit;
  if (text == "before_split") return SmoteOrder::kBeforeSplit;
  throw ConfigError("smote_order must be after_split or before_split, got '" + std::string(text) + "'");
}

void PipelineConfig::validate() const {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw ConfigError("test_fraction must lie in (0,1)");
  smote.validate();
  train.validate();
  if (format.symptom_column.empty() || format.status_column.empty()) {
    throw ConfigError("format column names must not be empty");
  }
  if (format.delimiters.empty()) throw ConfigError("format.delimiters must not be empty");
  for (const auto& [status, label] : format.status_labels) {
    if (label != 0 && label != 1) throw ConfigError("status label for '" + status + "' must be 0 or 1");
  }
}

namespace {

class TomlReader {
 public:
  TomlReader(const toml::table& table, std::string prefix) : table_(table), prefix_(std::move(prefix)) {}

  void require_known(std::initializer_list<std::string_view> keys) const {
    for (const auto& [key, node] : table_) {
      bool known = false;
      for (std::string_view k : keys) known = known || key.str() == k;
      if (!known) throw ConfigError("unknown config key '" + name(key.str()) + "'");
    }
  }

  void read(std::string_view key, double& out) const {
    const toml::node* node = table_.get(key);
    if (!node) return;
    if (auto v = node->value_exact<double>()) out = *v;
    else if (auto i = node->value_exact<std::int64_t>()) out = static_cast<double>(*i);
    else throw type_error(key, "a number");
  }

  void read(std::string_view key, int& out) const {
    const toml::node* node = table_.get(key);
    if (!node) return;
    auto v = node->value_exact<std::int64_t>();
    if (!v) throw type_error(key, "an integer");
    out = static_cast<int>(*v);
  }

  void read(std::string_view key, std::uint64_t& out) const {
    const toml::node* node = table_.get(key);
    if (!node) return;
    auto v = node->value_exact<std::int64_t>();
    if (!v || *v < 0) throw type_error(key, "a non-negative integer");
    out = static_cast<std::uint64_t>(*v);
  }

  void read(std::string_view key, std::string& out) const {
    const toml::node* node = table_.get(key);
    if (!node) return;
    auto v = node->value_exact<std::string>();
    if (!v) throw type_error(key, "a string");
    out = *v;
  }

  void read(std::string_view key, std::filesystem::path& out) const {
    std::string s;
    if (!table_.get(key)) return;
    read(key, s);
    out = s;
  }

  const toml::table* subtable(std::string_view key) const {
    const toml::node* node = table_.get(key);
    if (!node) return nullptr;
    if (!node->is_table()) throw type_error(key, "a table");
    return node->as_table();
  }

  std::string name(std::string_view key) const {
    return prefix_.empty() ? std::string(key) : prefix_ + "." + std::string(key);
  }

 private:
  ConfigError type_error(std::string_view key, std::string_view expected) const {
    return ConfigError("config key '" + name(key) + "' must be " + std::string(expected));
  }

  const toml::table& table_;
  std::string prefix_;
};

}  // namespace

void apply_toml(PipelineConfig& config, std::string_view toml_text, std::string_view source_name) {
  toml::table root;
  try {
    root = toml::parse(toml_text, source_name);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << source_name << ":" << e.source().begin.line << ": " << e.description();
    throw ConfigError(msg.str());
  }

  TomlReader top(root, "");
  top.require_known({"data_path", "test_fraction", "split_seed", "smote_order", "model_out",
                     "report_out", "parentage_out", "smote", "train", "format"});
  top.read("data_path", config.data_path);
  top.read("test_fraction", config.test_fraction);
  top.read("split_seed", config.split_seed);
  if (root.get("smote_order")) {
    std::string order;
    top.read("smote_order", order);
    config.smote_order = parse_smote_order(order);
  }
  top.read("model_out", config.model_out);
  top.read("report_out", config.report_out);
  top.read("parentage_out", config.parentage_out);

  if (const toml::table* t = top.subtable("smote")) {
    TomlReader r(*t, "smote");
    r.require_known({"k_neighbors", "target_ratio", "seed"});
    r.read("k_neighbors", config.smote.k_neighbors);
    r.read("target_ratio", config.smote.target_ratio);
    r.read("seed", config.smote.seed);
  }
  if (const toml::table* t = top.subtable("train")) {
    TomlReader r(*t, "train");
    r.require_known({"eta", "gamma", "lambda", "n_trees", "max_depth", "min_child_weight", "base_score"});
    r.read("eta", config.train.eta);
    r.read("gamma", config.train.gamma);
    r.read("lambda", config.train.lambda);
    r.read("n_trees", config.train.n_trees);
    r.read("max_depth", config.train.max_depth);
    r.read("min_child_weight", config.train.min_child_weight);
    r.read("base_score", config.train.base_score);
  }
  if (const toml::table* t = top.subtable("format")) {
    TomlReader r(*t, "format");
    r.require_known({"symptom_column", "status_column", "delimiters", "status_labels"});
    r.read("symptom_column", config.format.symptom_column);
    r.read("status_column", config.format.status_column);
    r.read("delimiters", config.format.delimiters);
    if (const toml::table* labels = r.subtable("status_labels")) {
      config.format.status_labels.clear();
      for (const auto& [key, node] : *labels) {
        auto v = node.value_exact<std::int64_t>();
        if (!v) throw ConfigError("config key 'format.status_labels." + std::string(key.str()) + "' must be an integer");
        config.format.status_labels[ingest::normalize_token(key.str())] = static_cast<int>(*v);
      }
    }
  }
}

void apply_toml_file(PipelineConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::filesystem::path before = config.data_path;
  apply_toml(config, buf.str(), path.string());
  // A relative data_path inside the file is taken relative to the file.
  if (config.data_path != before && config.data_path.is_relative()) {
    config.data_path = path.parent_path() / config.data_path;
  }
}

std::string config_echo_json(const PipelineConfig& config) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["test_fraction"] = config.test_fraction;
  doc["split_seed"] = config.split_seed;
  doc["smote_order"] = to_string(config.smote_order);
  doc["smote"] = {{"k_neighbors", config.smote.k_neighbors},
                  {"target_ratio", config.smote.target_ratio},
                  {"seed", config.smote.seed}};
  doc["train"] = {{"eta", config.train.eta},
                  {"gamma", config.train.gamma},
                  {"lambda", config.train.lambda},
                  {"n_trees", config.train.n_trees},
                  {"max_depth", config.train.max_depth},
                  {"min_child_weight", config.train.min_child_weight},
                  {"base_score", config.train.base_score}};
  ordered_json labels = ordered_json::object();
  for (const auto& [status, label] : config.format.status_labels) labels[status] = label;
  doc["format"] = {{"symptom_column", config.format.symptom_column},
                   {"status_column", config.format.status_column},
                   {"delimiters", config.format.delimiters},
                   {"status_labels", std::move(labels)}};
  return doc.dump();
}

PipelineResult run(const PipelineConfig& config, const boost::ProgressSink& progress) {
  config.validate();
  ingest::LoadedDataset loaded = ingest::load_dataset(config.data_path, config.format);

  PipelineResult result;
  result.ingest = loaded.report;

  Dataset train_set;
  Dataset test_set;
  if (config.smote_order == SmoteOrder::kAfterSplit) {
    ingest::Partition part = ingest::stratified_split(loaded.dataset, config.test_fraction, config.split_seed);
    smote::OversampleResult os = smote::oversample(part.train, config.smote);
    train_set = std::move(os.dataset);
    result.parentage = std::move(os.parentage);
    test_set = std::move(part.test);
  } else {
    smote::OversampleResult os = smote::oversample(loaded.dataset, config.smote);
    result.parentage = std::move(os.parentage);
    ingest::Partition part = ingest::stratified_split(os.dataset, config.test_fraction, config.split_seed);
    train_set = std::move(part.train);
    test_set = std::move(part.test);
  }
  result.synthetic = result.parentage.size();
  result.train_size = train_set.size();
  result.test_size = test_set.size();

  result.training = boost::train(train_set, config.train, progress);
  result.model_bytes = modelstore::serialize(result.training.model);
  result.evaluation = eval::evaluate(result.training.model, test_set);

  nlohmann::ordered_json stats;
  stats["total_rows"] = result.ingest.total_rows;
  stats["dropped_rows"] = result.ingest.dropped_rows;
  stats["positive"] = result.ingest.positive;
  stats["negative"] = result.ingest.negative;
  stats["vocabulary_size"] = loaded.dataset.dimension();
  stats["train_size"] = result.train_size;
  stats["synthetic"] = result.synthetic;
  stats["test_size"] = result.test_size;
  stats["final_train_loss"] = result.training.loss_trace.back();

  eval::ReportContext context;
  context.dataset_hash = hex64(fnv1a64(canonical_csv(loaded.dataset)));
  context.eval_set_hash = hex64(fnv1a64(canonical_csv(test_set)));
  context.model_id = modelstore::model_id(result.model_bytes);
  context.config_json = config_echo_json(config);
  context.pipeline_json = stats.dump();
  result.report_bytes = eval::report_to_json(result.evaluation, context);
  return result;
}

}  // namespace mpx::pipeline
