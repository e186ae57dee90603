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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mpx/booster.hpp"
#include "mpx/eval.hpp"
#include "mpx/ingest.hpp"
#include "mpx/sampler.hpp"

namespace mpx::pipeline {

enum class SmoteOrder { kAfterSplit, kBeforeSplit };

std::string_view to_string(SmoteOrder order);
/// Accepts "after_split" and "before_split"; throws ConfigError otherwise.
SmoteOrder parse_smote_order(std::string_view text);

/// Everything one training run needs: ingest -> split -> SMOTE -> train -> evaluate.
struct PipelineConfig {
  std::filesystem::path data_path;
  double test_fraction = 0.2;
  std::uint64_t split_seed = 42;
  smote::SmoteConfig smote;
  SmoteOrder smote_order = SmoteOrder::kAfterSplit;
  boost::TrainConfig train;
  ingest::FormatConfig format;
  std::filesystem::path model_out = "model.json";
  std::filesystem::path report_out = "report.json";
  /// Empty means no parentage log is written.
  std::filesystem::path parentage_out;

  void validate() const;
};

// Overlays values from a TOML document onto `config`. Keys mirror the
// PipelineConfig field names; nested tables are [smote], [train] and
// [format] (with an optional [format.status_labels] table). Unknown keys and
// wrong value types throw ConfigError.
void apply_toml(PipelineConfig& config, std::string_view toml_text,
                std::string_view source_name = "config");
void apply_toml_file(PipelineConfig& config, const std::filesystem::path& path);

/// Effective configuration as a JSON object. File paths are left out so
/// reports do not depend on where the run happened.
std::string config_echo_json(const PipelineConfig& config);

struct PipelineResult {
  ingest::IngestReport ingest;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  std::size_t synthetic = 0;
  boost::TrainResult training;
  eval::EvalReport evaluation;
  std::vector<smote::Parentage> parentage;
  std::string model_bytes;
  std::string report_bytes;
};

// Runs the workflow in memory; nothing is written to disk. The parentage
// indices refer to the dataset SMOTE was applied to (the training partition
// for after_split, the full dataset for before_split).
PipelineResult run(const PipelineConfig& config, const boost::ProgressSink& progress = {});

}  // namespace mpx::pipeline
