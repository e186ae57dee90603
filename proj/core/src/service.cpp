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

#include <sys/socket.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

// The library default of 5 drops connections under modest bursts.
#define CPPHTTPLIB_LISTEN_BACKLOG 128
#include "httplib.h"
#include "json.hpp"
#include "mpx/errors.hpp"
#include "mpx/ingest.hpp"
#include "mpx/modelstore.hpp"

namespace mpx::service {
namespace {

using nlohmann::ordered_json;

constexpr const char* kJson = "application/json";

HttpReply unavailable() {
  return {503, error_body("model_unavailable", "no model is loaded")};
}

}  // namespace

std::shared_ptr<const LoadedModel> load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelFormatError(ModelErrc::kIo, path.string(), "cannot open for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  auto loaded = std::make_shared<LoadedModel>();
  loaded->model = modelstore::deserialize(bytes);
  loaded->model_id = modelstore::model_id(bytes);
  return loaded;
}

Diagnosis diagnose(const LoadedModel& model, std::span<const std::string> symptoms) {
  const SymptomVocabulary& vocab = model.model.vocabulary;
  std::vector<double> features(vocab.size(), 0.0);
  std::set<std::string> seen;
  Diagnosis out;
  for (const std::string& raw : symptoms) {
    std::string token = ingest::normalize_token(raw);
    if (token.empty() || !seen.insert(token).second) continue;
    if (auto idx = vocab.index_of(token)) {
      features[*idx] = 1.0;
    } else {
      out.unknown_symptoms.push_back(std::move(token));
    }
  }
  const boost::Classification c = boost::classify(model.model, features);
  out.positive = c.label == 1;
  out.probability = c.probability;
  out.model_id = model.model_id;
  return out;
}

std::string to_json(const Diagnosis& diagnosis) {
  ordered_json doc;
  doc["diagnosis"] = diagnosis.positive ? "positive" : "negative";
  doc["probability"] = diagnosis.probability;
  doc["unknown_symptoms"] = diagnosis.unknown_symptoms;
  doc["model_id"] = diagnosis.model_id;
  return doc.dump();
}

std::string error_body(std::string_view code, std::string_view message) {
  ordered_json doc;
  doc["error"] = {{"code", code}, {"message", message}};
  return doc.dump();
}

HttpReply DiagnosisService::symptoms() const {
  if (!model_) return unavailable();
  ordered_json doc;
  doc["symptoms"] = model_->model.vocabulary.tokens();
  doc["model_id"] = model_->model_id;
  return {200, doc.dump()};
}

HttpReply DiagnosisService::diagnose(std::string_view request_body) const {
  if (!model_) return unavailable();
  ordered_json doc;
  try {
    doc = ordered_json::parse(request_body);
  } catch (const ordered_json::parse_error& e) {
    return {400, error_body("malformed_json", e.what())};
  }
  if (!doc.is_object()) return {400, error_body("invalid_request", "body must be a JSON object")};
  auto it = doc.find("symptoms");
  if (it == doc.end() || !it->is_array()) {
    return {400, error_body("invalid_request", "'symptoms' must be an array of strings")};
  }
  std::vector<std::string> symptoms;
  symptoms.reserve(it->size());
  for (const auto& v : *it) {
    if (!v.is_string()) return {400, error_body("invalid_request", "'symptoms' must be an array of strings")};
    symptoms.push_back(v.get<std::string>());
  }
  return {200, to_json(service::diagnose(*model_, symptoms))};
}

HttpReply DiagnosisService::health() const {
  if (!model_) return unavailable();
  const std::vector<double> zeros(model_->model.vocabulary.size(), 0.0);
  const boost::Classification c = boost::classify(model_->model, zeros);
  if (!std::isfinite(c.probability)) return {503, error_body("self_check_failed", "dummy prediction is not finite")};
  ordered_json doc;
  doc["status"] = "ok";
  doc["model_id"] = model_->model_id;
  return {200, doc.dump()};
}

Server::Server(DiagnosisService service, std::optional<std::filesystem::path> assets_dir)
    : service_(std::move(service)), http_(std::make_unique<httplib::Server>()) {
  // httplib's default adds SO_REUSEPORT, which would let a second server
  // share an occupied port instead of failing to bind.
  http_->set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });

  auto reply = [](httplib::Response& res, const HttpReply& r) {
    res.status = r.status;
    res.set_content(r.body, kJson);
  };
  http_->Get("/api/symptoms", [this, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, service_.symptoms());
  });
  http_->Post("/api/diagnose", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, service_.diagnose(req.body));
  });
  http_->Get("/healthz", [this, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, service_.health());
  });
  if (assets_dir) http_->set_mount_point("/", assets_dir->string());

  http_->set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
    const std::string code = res.status == 404 ? "not_found" : "http_" + std::to_string(res.status);
    res.set_content(error_body(code, req.method + " " + req.path), kJson);
    return httplib::Server::HandlerResponse::Handled;
  });
}

Server::~Server() {
  // httplib only releases the listening socket from inside its accept
  // loop, so a bound server that never ran is spun up and stopped here.
  bool orphaned = false;
  {
    std::lock_guard<std::mutex> lock(lifecycle_);
    orphaned = port_ > 0 && !started_;
    started_ = true;
  }
  if (!orphaned) return;
  std::thread drain([this] { http_->listen_after_bind(); });
  http_->wait_until_ready();
  http_->stop();
  drain.join();
}

bool Server::bind(const std::string& host, int port) {
  if (port == 0) {
    port_ = http_->bind_to_any_port(host);
    return port_ > 0;
  }
  if (!http_->bind_to_port(host, port)) return false;
  port_ = port;
  return true;
}

bool Server::run() { return http_->listen_after_bind(); }

void Server::stop() { http_->stop(); }

void Server::wait_until_ready() const { http_->wait_until_ready(); }

}  // namespace mpx::service
