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

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mpx/booster.hpp"

namespace httplib {
class Server;
}

namespace mpx::service {

/// An immutable model plus the content hash of the file it came from.
struct LoadedModel {
  boost::Ensemble model;
  std::string model_id;
};

std::shared_ptr<const LoadedModel> load_model_file(const std::filesystem::path& path);

struct Diagnosis {
  bool positive = false;
  double probability = 0.0;
  /// Normalized tokens absent from the vocabulary, first-seen order, no repeats.
  std::vector<std::string> unknown_symptoms;
  std::string model_id;
};

/// Normalizes and vectorizes raw tokens against the model vocabulary, then classifies.
Diagnosis diagnose(const LoadedModel& model, std::span<const std::string> symptoms);

/// {"diagnosis", "probability", "unknown_symptoms", "model_id"}.
std::string to_json(const Diagnosis& diagnosis);

/// {"error": {"code", "message"}}.
std::string error_body(std::string_view code, std::string_view message);

struct HttpReply {
  int status = 200;
  std::string body;
};

/// Endpoint logic, independent of the HTTP transport.
class DiagnosisService {
 public:
  /// A null model is allowed; every endpoint then answers 503.
  explicit DiagnosisService(std::shared_ptr<const LoadedModel> model)
      : model_(std::move(model)) {}

  HttpReply symptoms() const;
  HttpReply diagnose(std::string_view request_body) const;
  HttpReply health() const;

 private:
  std::shared_ptr<const LoadedModel> model_;
};

/// cpp-httplib front end for DiagnosisService.
class Server {
 public:
  explicit Server(DiagnosisService service,
                  std::optional<std::filesystem::path> assets_dir = std::nullopt);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Port 0 picks a free port. Returns false if the socket cannot be bound.
  bool bind(const std::string& host, int port);
  int port() const noexcept { return port_; }
  /// Blocks until stop() is called. Requires a successful bind(). Returns
  /// immediately if stop() already ran.
  bool run();
  /// Safe from any thread, before or during run().
  void stop();
  void wait_until_ready() const;

 private:
  DiagnosisService service_;
  std::unique_ptr<httplib::Server> http_;
  int port_ = -1;
  std::mutex lifecycle_;
  bool started_ = false;
  bool stop_requested_ = false;
};

}  // namespace mpx::service
