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

#include "mpx/service.hpp"

#include <gtest/gtest.h>

#include <future>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "mpx/errors.hpp"
#include "mpx/ingest.hpp"
#include "mpx/modelstore.hpp"
#include "test_support.hpp"

namespace mpx::service {
namespace {

using nlohmann::json;

std::shared_ptr<const LoadedModel> small_model() {
  static const std::shared_ptr<const LoadedModel> model = [] {
    auto d = ingest::load_dataset(mpx::testing::fixture("cases_small.csv")).dataset;
    const auto path = mpx::testing::scratch_dir("service") / "model.json";
    modelstore::save(boost::train(d, {}).model, path);
    return load_model_file(path);
  }();
  return model;
}

TEST(Service, NoModelMeansUnavailable) {
  DiagnosisService s(nullptr);
  for (const HttpReply& r : {s.symptoms(), s.diagnose(R"({"symptoms":[]})"), s.health()}) {
    EXPECT_EQ(r.status, 503);
    EXPECT_EQ(json::parse(r.body)["error"]["code"], "model_unavailable");
  }
}

TEST(Service, SymptomsListMatchesVocabulary) {
  DiagnosisService s(small_model());
  const HttpReply r = s.symptoms();
  ASSERT_EQ(r.status, 200);
  const auto j = json::parse(r.body);
  const std::vector<std::string> expected{"chills", "fatigue", "fever", "headache", "lymphadenopathy",
                                          "muscle pain", "rash", "sore throat", "swollen lymph nodes",
                                          "ulcers"};
  EXPECT_EQ(j["symptoms"].get<std::vector<std::string>>(), expected);
  EXPECT_EQ(j["model_id"], small_model()->model_id);
}

TEST(Service, DiagnoseMatchesClassifier) {
  const auto model = small_model();
  DiagnosisService s(model);
  const HttpReply r = s.diagnose(R"({"symptoms":["Fever", " rash ", "fever", "xyzzy", ""]})");
  ASSERT_EQ(r.status, 200);
  const auto j = json::parse(r.body);
  std::vector<double> f(10, 0.0);
  f[*model->model.vocabulary.index_of("fever")] = 1.0;
  f[*model->model.vocabulary.index_of("rash")] = 1.0;
  const auto c = boost::classify(model->model, f);
  EXPECT_EQ(j["probability"].get<double>(), c.probability);
  EXPECT_EQ(j["diagnosis"], c.label == 1 ? "positive" : "negative");
  EXPECT_EQ(j["unknown_symptoms"], json::array({"xyzzy"}));
  EXPECT_EQ(j["model_id"], model->model_id);
}

TEST(Service, EmptySymptomListIsValid) {
  const auto model = small_model();
  DiagnosisService s(model);
  const HttpReply r = s.diagnose(R"({"symptoms":[]})");
  ASSERT_EQ(r.status, 200);
  const auto j = json::parse(r.body);
  const auto c = boost::classify(model->model, std::vector<double>(10, 0.0));
  EXPECT_EQ(j["probability"].get<double>(), c.probability);
  EXPECT_TRUE(j["unknown_symptoms"].empty());
}

TEST(Service, BadRequests) {
  DiagnosisService s(small_model());
  EXPECT_EQ(json::parse(s.diagnose("{nope").body)["error"]["code"], "malformed_json");
  EXPECT_EQ(s.diagnose("{nope").status, 400);
  for (const char* body : {"[]", "{}", R"({"symptoms":"fever"})", R"({"symptoms":[1]})"}) {
    const HttpReply r = s.diagnose(body);
    EXPECT_EQ(r.status, 400) << body;
    EXPECT_EQ(json::parse(r.body)["error"]["code"], "invalid_request") << body;
  }
}

TEST(Service, Health) {
  const HttpReply r = DiagnosisService(small_model()).health();
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(json::parse(r.body)["status"], "ok");
}

TEST(Service, LoadFailureIsTyped) {
  EXPECT_THROW(load_model_file(mpx::testing::scratch_dir("service-missing") / "none.json"), ModelFormatError);
}

class ServerFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    server_ = std::make_unique<Server>(DiagnosisService(small_model()));
    ASSERT_TRUE(server_->bind("127.0.0.1", 0));
    thread_ = std::thread([this] { server_->run(); });
    server_->wait_until_ready();
  }
  void TearDown() override {
    server_->stop();
    if (thread_.joinable()) thread_.join();
  }
  httplib::Client client() const { return httplib::Client("127.0.0.1", server_->port()); }

  std::unique_ptr<Server> server_;
  std::thread thread_;
};

TEST_F(ServerFixture, EndpointsOverHttp) {
  auto cli = client();
  auto health = cli.Get("/healthz");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);

  auto symptoms = cli.Get("/api/symptoms");
  ASSERT_TRUE(symptoms);
  EXPECT_EQ(json::parse(symptoms->body)["symptoms"].size(), 10u);

  auto diag = cli.Post("/api/diagnose", R"({"symptoms":["rash"]})", "application/json");
  ASSERT_TRUE(diag);
  EXPECT_EQ(diag->status, 200);
  EXPECT_EQ(diag->get_header_value("Content-Type"), "application/json");

  auto bad = cli.Post("/api/diagnose", "{", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);

  auto missing = cli.Get("/api/nothing");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  EXPECT_EQ(json::parse(missing->body)["error"]["code"], "not_found");
}

TEST_F(ServerFixture, ConcurrentRequestsAgree) {
  const std::string body = R"({"symptoms":["fever","headache","chills"]})";
  const std::string expected = DiagnosisService(small_model()).diagnose(body).body;
  std::vector<std::future<std::string>> futures;
  for (int i = 0; i < 16; ++i) {
    futures.push_back(std::async(std::launch::async, [&] {
      auto cli = client();
      std::string last;
      for (int k = 0; k < 10; ++k) {
        auto res = cli.Post("/api/diagnose", body, "application/json");
        if (!res) return "failed: " + httplib::to_string(res.error());
        if (res->status != 200) return "status " + std::to_string(res->status);
        if (!last.empty() && res->body != last) return std::string("diverged");
        last = res->body;
      }
      return last;
    }));
  }
  for (auto& f : futures) EXPECT_EQ(f.get(), expected);
}

TEST(Server, OccupiedPortFailsToBind) {
  Server first{DiagnosisService(small_model())};
  ASSERT_TRUE(first.bind("127.0.0.1", 0));
  Server second{DiagnosisService(small_model())};
  EXPECT_FALSE(second.bind("127.0.0.1", first.port()));
}

}  // namespace
}  // namespace mpx::service
