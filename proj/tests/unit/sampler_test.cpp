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

#include <gtest/gtest.h>

#include <sstream>

#include "mpx/errors.hpp"
#include "test_support.hpp"

namespace mpx::smote {
namespace {

Sample point(std::vector<double> f, int label = 1) { return {std::move(f), label}; }

TEST(NearestNeighbors, OneAxis) {
  std::vector<Sample> pts{point({0.0}), point({1.0}), point({10.0})};
  EXPECT_EQ(nearest_neighbors(pts, 0, 1), (std::vector<std::size_t>{1}));
  EXPECT_EQ(nearest_neighbors(pts, 2, 2), (std::vector<std::size_t>{1, 0}));
}

TEST(NearestNeighbors, IdenticalPointsExcludeSelf) {
  std::vector<Sample> pts{point({0.5, 0.5}), point({0.5, 0.5})};
  EXPECT_EQ(nearest_neighbors(pts, 0, 1), (std::vector<std::size_t>{1}));
  EXPECT_EQ(nearest_neighbors(pts, 1, 1), (std::vector<std::size_t>{0}));
}

TEST(NearestNeighbors, KIsClampedAndTiesGoToLowerIndex) {
  std::vector<Sample> pts{point({0}), point({1}), point({-1}), point({1})};
  EXPECT_EQ(nearest_neighbors(pts, 0, 10), (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_THROW(nearest_neighbors(std::vector<Sample>{point({0})}, 0, 1), ConfigError);
}

TEST(NearestNeighbors, MatchesExhaustiveRanking) {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Sample> pts;
    for (int i = 0; i < 8; ++i) {
      std::vector<double> f;
      // Binary coordinates produce many distance ties.
      for (int c = 0; c < 4; ++c) f.push_back(trial % 2 ? rng.uniform01() : double(rng.uniform_index(2)));
      pts.push_back(point(f));
    }
    for (std::size_t q = 0; q < pts.size(); ++q) {
      EXPECT_EQ(nearest_neighbors(pts, q, 3), mpx::testing::brute_force_knn(pts, q, 3));
    }
  }
}

TEST(Synthesize, EndpointsAndMidpoint) {
  const Sample x = point({0.0, 1.0});
  const Sample n = point({1.0, 1.0});
  EXPECT_EQ(synthesize(x, n, 0.0), x);
  EXPECT_EQ(synthesize(x, n, 0.5).features, (std::vector<double>{0.5, 1.0}));
  EXPECT_EQ(synthesize(x, n, 0.5).label, 1);
}

TEST(Synthesize, StaysInsideParentBox) {
  Rng rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    Sample a = point({rng.uniform01(), rng.uniform01(), double(rng.uniform_index(2))});
    Sample b = point({rng.uniform01(), rng.uniform01(), double(rng.uniform_index(2))});
    const Sample s = synthesize(a, b, rng.uniform01());
    for (std::size_t c = 0; c < 3; ++c) {
      EXPECT_GE(s.features[c], std::min(a.features[c], b.features[c]));
      EXPECT_LE(s.features[c], std::max(a.features[c], b.features[c]));
    }
  }
}

Dataset counts(std::size_t majority, std::size_t minority) {
  Dataset d;
  d.vocabulary = SymptomVocabulary({"a", "b"});
  for (std::size_t i = 0; i < majority; ++i) d.samples.push_back(point({double(i % 2), 0.01 * double(i)}, 1));
  for (std::size_t i = 0; i < minority; ++i) d.samples.push_back(point({double(i % 2), 0.5 + 0.01 * double(i)}, 0));
  return d;
}

TEST(Oversample, BalancedInputIsUnchanged) {
  Dataset d;
  d.vocabulary = SymptomVocabulary({"a"});
  d.samples = {point({0}, 1), point({1}, 0), point({0.5}, 1), point({0.2}, 0)};
  auto out = oversample(d, {});
  EXPECT_EQ(canonical_csv(out.dataset), canonical_csv(d));
  EXPECT_TRUE(out.parentage.empty());
}

TEST(Oversample, SixAndThree) {
  Dataset d;
  d.vocabulary = SymptomVocabulary({"a", "b"});
  for (int i = 0; i < 6; ++i) d.samples.push_back(point({double(i % 2), 0.1 * i}, 1));
  for (int i = 0; i < 3; ++i) d.samples.push_back(point({0.3 * i, 1.0}, 0));
  auto out = oversample(d, {});
  EXPECT_EQ(out.dataset.count_label(1), 6u);
  EXPECT_EQ(out.dataset.count_label(0), 6u);
  EXPECT_EQ(out.parentage.size(), 3u);
  // Round-robin parents in minority order.
  EXPECT_EQ(out.parentage[0].parent_index, 6u);
  EXPECT_EQ(out.parentage[1].parent_index, 7u);
  EXPECT_EQ(out.parentage[2].parent_index, 8u);
}

TEST(Oversample, LoneMinorityIsDuplicated) {
  Dataset d;
  d.vocabulary = SymptomVocabulary({"a"});
  d.samples = {point({0.25}, 0), point({1}, 1), point({0}, 1), point({1}, 1)};
  auto out = oversample(d, {});
  EXPECT_EQ(out.dataset.count_label(0), 3u);
  for (std::size_t i = 4; i < out.dataset.size(); ++i) EXPECT_EQ(out.dataset.samples[i], d.samples[0]);
}

TEST(Oversample, RatioBelowCurrentBalanceAddsNothing) {
  auto d = counts(10, 6);
  SmoteConfig c;
  c.target_ratio = 0.5;
  EXPECT_TRUE(oversample(d, c).parentage.empty());
}

TEST(Oversample, Properties) {
  Rng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t rows = 10 + rng.uniform_index(60);
    Dataset d = mpx::testing::random_dataset(rng, rows, 2 + rng.uniform_index(6));
    if (d.count_label(0) == d.count_label(1)) continue;
    SmoteConfig cfg;
    cfg.k_neighbors = 1 + static_cast<int>(rng.uniform_index(7));
    cfg.target_ratio = 0.3 + 0.7 * rng.uniform01();
    cfg.seed = rng.next();
    const auto out = oversample(d, cfg);

    const int minority = d.count_label(1) < d.count_label(0) ? 1 : 0;
    const std::size_t majority = std::max(d.count_label(0), d.count_label(1));
    const std::size_t target = static_cast<std::size_t>(std::floor(cfg.target_ratio * majority));
    EXPECT_EQ(out.dataset.count_label(minority), std::max(target, d.count_label(minority)));
    EXPECT_EQ(out.dataset.count_label(1 - minority), majority);

    ASSERT_GE(out.dataset.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) EXPECT_EQ(out.dataset.samples[i], d.samples[i]);

    for (const Parentage& p : out.parentage) {
      const Sample& s = out.dataset.samples[p.synthetic_index];
      const Sample& a = d.samples[p.parent_index];
      const Sample& b = d.samples[p.neighbor_index];
      EXPECT_EQ(s.label, minority);
      EXPECT_EQ(a.label, minority);
      EXPECT_EQ(b.label, minority);
      EXPECT_GE(p.u, 0.0);
      EXPECT_LT(p.u, 1.0);
      for (std::size_t c = 0; c < s.features.size(); ++c) {
        EXPECT_NEAR(s.features[c], a.features[c] + p.u * (b.features[c] - a.features[c]), 1e-12);
        EXPECT_GE(s.features[c], std::min(a.features[c], b.features[c]));
        EXPECT_LE(s.features[c], std::max(a.features[c], b.features[c]));
      }
    }
    EXPECT_EQ(canonical_csv(oversample(d, cfg).dataset), canonical_csv(out.dataset));
  }
}

TEST(Oversample, Errors) {
  Dataset d;
  d.vocabulary = SymptomVocabulary({"a"});
  d.samples = {point({0}, 1), point({1}, 1)};
  EXPECT_THROW(oversample(d, {}), TrainingError);
  SmoteConfig bad;
  bad.k_neighbors = 0;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = {};
  bad.target_ratio = 1.5;
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(Oversample, ParentageCsv) {
  std::vector<Parentage> log{{10, 2, 5, 0.25}, {11, 3, 2, 0.5}};
  std::ostringstream out;
  write_parentage_csv(log, out);
  EXPECT_EQ(out.str(), "synthetic_index,parent_index,neighbor_index,u\n10,2,5,0.25\n11,3,2,0.5\n");
}

}  // namespace
}  // namespace mpx::smote
