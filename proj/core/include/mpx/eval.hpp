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
#include <span>
#include <string>

#include "mpx/booster.hpp"
#include "mpx/dataset.hpp"

namespace mpx::eval {

/// Binary confusion matrix and its derived rates. A 0/0 precision or recall
/// is reported as 0 with the matching degenerate flag set.
struct EvalReport {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;
  std::size_t n = 0;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool precision_degenerate = false;
  bool recall_degenerate = false;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

/// Throws ConfigError on empty input or mismatched lengths.
EvalReport tally(std::span<const int> predicted, std::span<const int> actual);

/// Throws ConfigError on an empty dataset, DimensionError on a vocabulary mismatch.
EvalReport evaluate(const boost::Ensemble& model, const Dataset& data);

/// Fields serialized next to the metrics. The two JSON strings must each
/// hold an object; they are embedded as "config" and "pipeline".
struct ReportContext {
  std::string dataset_hash;
  std::string eval_set_hash;
  std::string model_id;
  std::string config_json = "{}";
  std::string pipeline_json = "{}";
};

/// Deterministic JSON (no timestamps), newline-terminated.
std::string report_to_json(const EvalReport& report, const ReportContext& context);

}  // namespace mpx::eval
