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

#include "mpx/eval.hpp"

#include <string>

#include "json.hpp"
#include "mpx/errors.hpp"

namespace mpx::eval {

EvalReport tally(std::span<const int> predicted, std::span<const int> actual) {
  if (predicted.size() != actual.size()) throw ConfigError("tally: length mismatch");
  if (predicted.empty()) throw ConfigError("tally: empty input");

  EvalReport r;
  r.n = predicted.size();
  for (std::size_t i = 0; i < r.n; ++i) {
    const bool p = predicted[i] == 1;
    const bool a = actual[i] == 1;
    if (p && a) ++r.tp;
    else if (p) ++r.fp;
    else if (a) ++r.fn;
    else ++r.tn;
  }
  const auto d = [](std::size_t v) { return static_cast<double>(v); };
  r.accuracy = d(r.tp + r.tn) / d(r.n);
  r.precision_degenerate = r.tp + r.fp == 0;
  r.recall_degenerate = r.tp + r.fn == 0;
  r.precision = r.precision_degenerate ? 0.0 : d(r.tp) / d(r.tp + r.fp);
  r.recall = r.recall_degenerate ? 0.0 : d(r.tp) / d(r.tp + r.fn);
  r.f1 = r.precision + r.recall > 0.0 ? 2.0 * r.precision * r.recall / (r.precision + r.recall) : 0.0;
  return r;
}

EvalReport evaluate(const boost::Ensemble& model, const Dataset& data) {
  if (data.samples.empty()) throw ConfigError("evaluate: empty dataset");
  if (data.dimension() != model.vocabulary.size()) {
    throw DimensionError("evaluate: dataset has " + std::to_string(data.dimension()) +
                         " features, model has " + std::to_string(model.vocabulary.size()));
  }
  std::vector<int> predicted;
  std::vector<int> actual;
  predicted.reserve(data.size());
  actual.reserve(data.size());
  for (const Sample& s : data.samples) {
    predicted.push_back(boost::classify(model, s.features).label);
    actual.push_back(s.label);
  }
  return tally(predicted, actual);
}

namespace {

nlohmann::ordered_json embedded_object(const std::string& text, const char* name) {
  auto j = nlohmann::ordered_json::parse(text, nullptr, false);
  if (!j.is_object()) throw ConfigError(std::string("report ") + name + " must be a JSON object");
  return j;
}

}  // namespace

std::string report_to_json(const EvalReport& report, const ReportContext& context) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["format_version"] = 1;
  doc["n"] = report.n;
  doc["tp"] = report.tp;
  doc["fp"] = report.fp;
  doc["tn"] = report.tn;
  doc["fn"] = report.fn;
  doc["accuracy"] = report.accuracy;
  doc["precision"] = report.precision;
  doc["recall"] = report.recall;
  doc["f1"] = report.f1;
  doc["precision_degenerate"] = report.precision_degenerate;
  doc["recall_degenerate"] = report.recall_degenerate;
  doc["dataset_hash"] = context.dataset_hash;
  doc["eval_set_hash"] = context.eval_set_hash;
  doc["model_id"] = context.model_id;
  doc["config"] = embedded_object(context.config_json, "config");
  doc["pipeline"] = embedded_object(context.pipeline_json, "pipeline");
  return doc.dump(2) + "\n";
}

}  // namespace mpx::eval
