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

#include <gtest/gtest.h>

#include <sstream>

#include "json.hpp"
#include "mpx/booster.hpp"
#include "mpx/hash.hpp"
#include "mpx/ingest.hpp"
#include "mpx/modelstore.hpp"
#include "mpx/pipeline.hpp"
#include "mpx/sampler.hpp"
#include "test_support.hpp"

namespace mpx {
namespace {

using nlohmann::json;
using mpx::testing::golden;

ingest::Partition small_split() {
  auto d = ingest::load_dataset(mpx::testing::fixture("cases_small.csv")).dataset;
  return ingest::stratified_split(d, 0.2, 42);
}

// Walks two serialized trees in lockstep; structure and thresholds must
// match exactly, leaf weights to 1e-12.
void expect_same_tree(const json& got, const json& want, const std::string& where) {
  ASSERT_EQ(got.contains("leaf"), want.contains("leaf")) << where;
  if (want.contains("leaf")) {
    EXPECT_NEAR(got["leaf"].get<double>(), want["leaf"].get<double>(), 1e-12) << where;
    return;
  }
  EXPECT_EQ(got["feature"], want["feature"]) << where;
  EXPECT_EQ(got["threshold"], want["threshold"]) << where;
  expect_same_tree(got["left"], want["left"], where + ".left");
  expect_same_tree(got["right"], want["right"], where + ".right");
}

TEST(Golden, SplitOfSmallFixture) {
  const auto part = small_split();
  std::string text = "train\n" + canonical_csv(part.train) + "test\n" + canonical_csv(part.test);
  EXPECT_EQ(text, golden("small_split.txt", text));
}

TEST(Golden, SmoteOnSmallTrainingSplit) {
  const auto part = small_split();
  const auto os = smote::oversample(part.train, smote::SmoteConfig{});
  std::ostringstream out;
  smote::write_parentage_csv(os.parentage, out);
  out << "--\n" << canonical_csv(os.dataset);
  EXPECT_EQ(out.str(), golden("small_smote.txt", out.str()));
}

TEST(Golden, FirstTreeOnSmallTrainingSplit) {
  const auto part = small_split();
  const auto os = smote::oversample(part.train, smote::SmoteConfig{});
  boost::TrainConfig c;
  c.n_trees = 1;
  const auto result = boost::train(os.dataset, c);
  const std::string bytes = modelstore::serialize(result.model);
  const json want = json::parse(golden("small_first_tree.json", bytes));
  const json got = json::parse(bytes);
  ASSERT_EQ(want["trees"].size(), 1u);
  expect_same_tree(got["trees"][0], want["trees"][0], "trees[0]");
  EXPECT_EQ(got["base_margin"], want["base_margin"]);
}

TEST(Golden, PredictionsOfSmallModel) {
  auto d = ingest::load_dataset(mpx::testing::fixture("cases_small.csv")).dataset;
  const auto model = boost::train(d, {}).model;
  std::ostringstream out;
  const std::size_t n = d.vocabulary.size();
  // Every single-symptom vector, all-zeros and all-ones, then the fixture rows.
  std::vector<std::vector<double>> probes;
  probes.emplace_back(n, 0.0);
  probes.emplace_back(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    probes.emplace_back(n, 0.0);
    probes.back()[i] = 1.0;
  }
  for (const Sample& s : d.samples) probes.push_back(s.features);
  for (const auto& f : probes) {
    const auto c = boost::classify(model, f);
    for (double v : f) out << (v != 0.0 ? '1' : '0');
    out << ' ' << c.label << ' ' << format_double(c.probability) << '\n';
  }
  EXPECT_EQ(out.str(), golden("small_predictions.txt", out.str()));
}

TEST(Golden, SyntheticPipelineArtifacts) {
  pipeline::PipelineConfig c;
  c.data_path = mpx::testing::fixture("cases_synth.csv");
  const auto r = pipeline::run(c);
  EXPECT_EQ(r.report_bytes, golden("synth_report.json", r.report_bytes));
  EXPECT_EQ(r.model_bytes, golden("synth_model.json", r.model_bytes));
}

}  // namespace
}  // namespace mpx
