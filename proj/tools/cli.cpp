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

#include "cli.hpp"

#include <pthread.h>
#include <signal.h>

#include <atomic>
#include <cerrno>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "mpx/errors.hpp"
#include "mpx/eval.hpp"
#include "mpx/hash.hpp"
#include "mpx/ingest.hpp"
#include "mpx/pipeline.hpp"
#include "mpx/sampler.hpp"
#include "mpx/service.hpp"

namespace mpx::cli {
namespace {

namespace fs = std::filesystem;

struct TrainFlags {
  std::optional<std::string> config_file;
  std::optional<std::string> data;
  std::optional<double> test_fraction;
  std::optional<std::uint64_t> split_seed;
  std::optional<std::string> smote_order;
  std::optional<int> smote_k;
  std::optional<double> smote_ratio;
  std::optional<std::uint64_t> smote_seed;
  std::optional<double> eta;
  std::optional<double> gamma;
  std::optional<double> lambda;
  std::optional<int> n_trees;
  std::optional<int> max_depth;
  std::optional<double> min_child_weight;
  std::optional<double> base_score;
  std::optional<std::string> symptom_column;
  std::optional<std::string> status_column;
  std::optional<std::string> model_out;
  std::optional<std::string> report_out;
  std::optional<std::string> parentage_out;
  bool verbose = false;
};

struct FormatFlags {
  std::string symptom_column = "Symptoms";
  std::string status_column = "Status";
};

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

template <typename T>
void overlay(const std::optional<T>& flag, T& target) {
  if (flag) target = *flag;
}

pipeline::PipelineConfig resolve(const TrainFlags& f) {
  pipeline::PipelineConfig c;
  if (f.config_file) pipeline::apply_toml_file(c, *f.config_file);
  if (f.data) c.data_path = *f.data;
  overlay(f.test_fraction, c.test_fraction);
  overlay(f.split_seed, c.split_seed);
  if (f.smote_order) c.smote_order = pipeline::parse_smote_order(*f.smote_order);
  overlay(f.smote_k, c.smote.k_neighbors);
  overlay(f.smote_ratio, c.smote.target_ratio);
  overlay(f.smote_seed, c.smote.seed);
  overlay(f.eta, c.train.eta);
  overlay(f.gamma, c.train.gamma);
  overlay(f.lambda, c.train.lambda);
  overlay(f.n_trees, c.train.n_trees);
  overlay(f.max_depth, c.train.max_depth);
  overlay(f.min_child_weight, c.train.min_child_weight);
  overlay(f.base_score, c.train.base_score);
  overlay(f.symptom_column, c.format.symptom_column);
  overlay(f.status_column, c.format.status_column);
  if (f.model_out) c.model_out = *f.model_out;
  if (f.report_out) c.report_out = *f.report_out;
  if (f.parentage_out) c.parentage_out = *f.parentage_out;
  if (c.data_path.empty()) throw ConfigError("no data file given (use --data or data_path in --config)");
  c.validate();
  return c;
}

int cmd_train(const TrainFlags& flags, std::ostream& out, std::ostream& err) {
  pipeline::PipelineConfig config;
  try {
    config = resolve(flags);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  pipeline::PipelineResult result;
  try {
    boost::ProgressSink progress;
    if (flags.verbose) {
      progress = [&err](int round, double loss) {
        err << "round " << round + 1 << " train_logloss " << format_double(loss) << "\n";
      };
    }
    result = pipeline::run(config, progress);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IngestError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }

  try {
    write_file(config.model_out, result.model_bytes);
    write_file(config.report_out, result.report_bytes);
    if (!config.parentage_out.empty()) {
      std::ofstream log(config.parentage_out, std::ios::binary | std::ios::trunc);
      if (!log) throw Error("cannot open '" + config.parentage_out.string() + "' for writing");
      smote::write_parentage_csv(result.parentage, log);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }

  const eval::EvalReport& r = result.evaluation;
  out << "accuracy " << format_double(r.accuracy) << " (" << r.tp + r.tn << "/" << r.n
      << " held-out, tp=" << r.tp << " fp=" << r.fp << " tn=" << r.tn << " fn=" << r.fn << ")\n";
  return kExitOk;
}

int cmd_predict(const std::string& model_path, const std::vector<std::string>& symptoms,
                std::ostream& out, std::ostream& err) {
  std::shared_ptr<const service::LoadedModel> model;
  try {
    model = service::load_model_file(model_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  out << service::to_json(service::diagnose(*model, symptoms)) << "\n";
  return kExitOk;
}

int cmd_serve(const std::string& model_path, const std::string& host, int port,
              const std::optional<std::string>& assets, std::ostream& out, std::ostream& err) {
  std::shared_ptr<const service::LoadedModel> model;
  try {
    model = service::load_model_file(model_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::optional<fs::path> assets_dir;
  if (assets) {
    if (!fs::is_directory(*assets)) {
      err << "error: assets directory '" << *assets << "' does not exist\n";
      return kExitUsage;
    }
    assets_dir = *assets;
  }

  // Block the shutdown signals before the server spawns worker threads so
  // only the waiter below receives them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  sigset_t previous;
  pthread_sigmask(SIG_BLOCK, &signals, &previous);

  service::Server server(service::DiagnosisService(model), assets_dir);
  if (!server.bind(host, port)) {
    pthread_sigmask(SIG_SETMASK, &previous, nullptr);
    err << "error: cannot bind " << host << ":" << port << "\n";
    return kExitUsage;
  }
  out << "serving model " << model->model_id << " on http://" << host << ":" << server.port() << "\n"
      << std::flush;

  std::atomic<bool> done{false};
  std::thread waiter([&] {
    const timespec tick{0, 100'000'000};
    while (!done.load()) {
      if (sigtimedwait(&signals, nullptr, &tick) > 0) {
        server.stop();
        return;
      }
    }
  });
  const bool clean = server.run();
  done.store(true);
  waiter.join();
  pthread_sigmask(SIG_SETMASK, &previous, nullptr);
  if (!clean) {
    err << "error: server stopped unexpectedly\n";
    return kExitRuntime;
  }
  out << "shutdown\n";
  return kExitOk;
}

int cmd_vocab(const std::string& data, const FormatFlags& format_flags,
              const std::optional<std::string>& out_path, std::ostream& out, std::ostream& err) {
  ingest::FormatConfig format;
  format.symptom_column = format_flags.symptom_column;
  format.status_column = format_flags.status_column;
  ingest::LoadedDataset loaded;
  try {
    loaded = ingest::load_dataset(data, format);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  ingest::write_vocabulary(loaded.dataset.vocabulary, out);
  if (out_path) {
    std::ofstream file(*out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "error: cannot open '" << *out_path << "' for writing\n";
      return kExitRuntime;
    }
    ingest::write_vocabulary(loaded.dataset.vocabulary, file);
  }
  const ingest::IngestReport& r = loaded.report;
  err << loaded.dataset.vocabulary.size() << " tokens; " << r.positive << " positive, " << r.negative
      << " negative; " << r.dropped_rows << " of " << r.total_rows << " rows dropped\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symptom-based monkeypox triage: train, predict, serve"};
  app.require_subcommand(1);

  TrainFlags train;
  CLI::App* train_cmd = app.add_subcommand("train", "ingest -> split -> SMOTE -> train -> evaluate -> save");
  train_cmd->add_option("--config", train.config_file, "TOML file with pipeline settings");
  train_cmd->add_option("--data", train.data, "CSV with Symptoms and Status columns");
  train_cmd->add_option("--test-fraction", train.test_fraction, "held-out fraction (default 0.2)");
  train_cmd->add_option("--split-seed", train.split_seed, "seed for the stratified split");
  train_cmd->add_option("--smote-order", train.smote_order, "after_split (default) or before_split");
  train_cmd->add_option("--smote-k", train.smote_k, "SMOTE neighbor count (default 5)");
  train_cmd->add_option("--smote-ratio", train.smote_ratio, "minority/majority target ratio (default 1.0)");
  train_cmd->add_option("--smote-seed", train.smote_seed, "SMOTE seed");
  train_cmd->add_option("--eta", train.eta, "learning rate (default 0.0991)");
  train_cmd->add_option("--gamma", train.gamma, "minimum split gain (default 0)");
  train_cmd->add_option("--lambda", train.lambda, "L2 leaf regularizer (default 1)");
  train_cmd->add_option("--n-trees", train.n_trees, "boosting rounds (default 80)");
  train_cmd->add_option("--max-depth", train.max_depth, "tree depth limit (default 6)");
  train_cmd->add_option("--min-child-weight", train.min_child_weight, "minimum hessian per child (default 1)");
  train_cmd->add_option("--base-score", train.base_score, "initial probability (default 0.5)");
  train_cmd->add_option("--symptom-column", train.symptom_column, "symptom column name");
  train_cmd->add_option("--status-column", train.status_column, "status column name");
  train_cmd->add_option("--model-out", train.model_out, "model file path (default model.json)");
  train_cmd->add_option("--report-out", train.report_out, "report file path (default report.json)");
  train_cmd->add_option("--parentage-out", train.parentage_out, "optional SMOTE parentage CSV");
  train_cmd->add_flag("--verbose,-v", train.verbose, "print per-round training loss");

  std::string predict_model;
  std::vector<std::string> predict_symptoms;
  CLI::App* predict_cmd = app.add_subcommand("predict", "diagnose a symptom set with a saved model");
  predict_cmd->add_option("--model", predict_model, "model file")->required();
  predict_cmd->add_option("--symptom", predict_symptoms, "symptom token (repeatable)");

  std::string serve_model;
  std::string serve_host = "0.0.0.0";
  int serve_port = 8080;
  std::optional<std::string> serve_assets;
  CLI::App* serve_cmd = app.add_subcommand("serve", "run the HTTP inference service");
  serve_cmd->add_option("--model", serve_model, "model file")->required();
  serve_cmd->add_option("--port", serve_port, "listen port (default 8080)");
  serve_cmd->add_option("--host", serve_host, "listen address (default 0.0.0.0)");
  serve_cmd->add_option("--assets", serve_assets, "static UI directory served at /");

  std::string vocab_data;
  FormatFlags vocab_format;
  std::optional<std::string> vocab_out;
  CLI::App* vocab_cmd = app.add_subcommand("vocab", "print the symptom vocabulary derived from a CSV");
  vocab_cmd->add_option("--data", vocab_data, "CSV with Symptoms and Status columns")->required();
  vocab_cmd->add_option("--out", vocab_out, "also write the vocabulary to this file");
  vocab_cmd->add_option("--symptom-column", vocab_format.symptom_column, "symptom column name");
  vocab_cmd->add_option("--status-column", vocab_format.status_column, "status column name");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*train_cmd) return cmd_train(train, out, err);
  if (*predict_cmd) return cmd_predict(predict_model, predict_symptoms, out, err);
  if (*serve_cmd) return cmd_serve(serve_model, serve_host, serve_port, serve_assets, out, err);
  if (*vocab_cmd) return cmd_vocab(vocab_data, vocab_format, vocab_out, out, err);
  return kExitUsage;
}

}  // namespace mpx::cli
