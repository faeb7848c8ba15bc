/* Copyright 2026 The SAGL Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Command-line front end: generate, train, eval, inspect-graph, export-repr
// and check. Exit codes: 0 success, 1 run or check failure, 2 input error,
// 3 shape or consistency error.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sagl/checkpoint.h"
#include "sagl/config.h"
#include "sagl/errors.h"
#include "sagl/io.h"
#include "sagl/metrics.h"
#include "sagl/synthetic.h"
#include "sagl/theorem_checks.h"
#include "sagl/trainer.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;
constexpr int kExitShape = 3;

std::optional<std::uint64_t> EnvSeed() {
  const char* env = std::getenv("SAGL_SEED");
  if (env == nullptr || *env == '\0') return std::nullopt;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') throw sagl::ConfigError(std::string("SAGL_SEED: cannot parse '") + env + "'");
  return v;
}

std::vector<sagl::Matrix> LoadViews(const std::vector<std::string>& paths) {
  std::vector<sagl::Matrix> views;
  for (const auto& p : paths) views.push_back(sagl::LoadFeatures(p).values);
  return views;
}

void WriteText(const fs::path& path, const std::string& text) {
  sagl::WriteFileBytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                                       text.size()));
}

// generate ------------------------------------------------------------------

struct GenerateArgs {
  sagl::SyntheticSpec spec;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string dtype = "f64";
};

int RunGenerate(GenerateArgs& a) {
  a.spec.seed = a.seed ? *a.seed : EnvSeed().value_or(0);
  const sagl::DType dtype = a.dtype == "f32" ? sagl::DType::kF32 : sagl::DType::kF64;
  const sagl::SyntheticData data = sagl::GenerateSynthetic(a.spec);
  const fs::path out(a.out);
  fs::create_directories(out);
  for (std::size_t l = 0; l < data.views.size(); ++l) {
    const fs::path p = out / ("view_" + std::to_string(l) + ".fmat");
    sagl::WriteMatrix(p, data.views[l], dtype);
    std::cout << p.string() << ' ' << data.views[l].rows() << 'x' << data.views[l].cols() << '\n';
  }
  sagl::WriteLabels(out / "labels.lbl", data.labels);
  for (std::size_t l = 0; l < data.test_views.size(); ++l) {
    const fs::path p = out / ("test_view_" + std::to_string(l) + ".fmat");
    sagl::WriteMatrix(p, data.test_views[l], dtype);
    std::cout << p.string() << ' ' << data.test_views[l].rows() << 'x'
              << data.test_views[l].cols() << '\n';
  }
  if (!data.test_views.empty()) sagl::WriteLabels(out / "test_labels.lbl", data.test_labels);

  std::ostringstream m;
  m.precision(17);
  m << "generator=union_of_subspaces\n"
    << "subspaces=" << a.spec.subspaces << "\nsubspace_dim=" << a.spec.subspace_dim
    << "\nambient_dim=" << a.spec.ambient_dim << "\nper_class=" << a.spec.per_class
    << "\ntest_per_class=" << a.spec.test_per_class << "\nnoise_sigma=" << a.spec.noise_sigma
    << "\nviews=" << a.spec.views << "\nmin_principal_angle_deg="
    << a.spec.min_principal_angle_deg << "\nseed=" << a.spec.seed << "\ndtype=" << a.dtype
    << '\n';
  WriteText(out / "manifest.txt", m.str());
  return kExitOk;
}

// train ---------------------------------------------------------------------

struct TrainArgs {
  std::vector<std::string> views;
  std::string config;
  std::string out;
  std::map<std::string, std::string> overrides;  // config key -> flag value
};

int RunTrain(const TrainArgs& a) {
  sagl::TrainConfig cfg = a.config.empty() ? sagl::TrainConfig{} : sagl::ParseConfigFile(a.config);
  bool seed_set = false;
  if (!a.config.empty()) {
    const std::vector<std::uint8_t> bytes = sagl::ReadFileBytes(a.config);
    const std::string text(bytes.begin(), bytes.end());
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
      const auto first = line.find_first_not_of(" \t");
      if (first != std::string::npos && line.compare(first, 4, "seed") == 0) seed_set = true;
    }
  }
  for (const auto& [key, value] : a.overrides) {
    sagl::ApplyConfigValue(cfg, key, value);
    if (key == "seed") seed_set = true;
  }
  if (!seed_set) {
    if (auto env = EnvSeed()) cfg.seed = *env;
  }
  if (cfg.num_classes == 0) throw sagl::ConfigError("num_classes: required (--num-classes)");
  sagl::ValidateConfig(cfg);

  const std::vector<sagl::Matrix> views = LoadViews(a.views);
  const sagl::TrainResult result = sagl::Train(views, cfg);
  const fs::path out(a.out);
  sagl::SaveModel(result.model, out);
  WriteText(out / "train_log.csv", sagl::FormatTrainLogCsv(result.log, views.size()));
  if (!result.log.empty()) {
    const auto& last = result.log.back().loss;
    std::cerr << "trained " << cfg.epochs << " epochs on " << views[0].rows()
              << " samples; final total=" << last.total << " pseudo=" << last.pseudo
              << " div=" << last.diversity << " align=" << last.alignment << '\n';
  }
  return kExitOk;
}

// eval, inspect-graph, export-repr -------------------------------------------

struct ModelArgs {
  std::string model;
  std::vector<std::string> views;
  std::string labels;
  std::size_t batch_size = 0;  // 0: the checkpoint's batch_size
};

std::size_t BatchSize(const ModelArgs& a, const sagl::SaglModel& model) {
  return a.batch_size != 0 ? a.batch_size : model.config.batch_size;
}

std::vector<std::size_t> ReadTruth(const std::string& path, std::size_t n) {
  const sagl::LabelVector truth = sagl::ReadLabels(path);
  if (truth.labels.size() != n) {
    throw sagl::ShapeError("labels file '" + path + "' has " +
                           std::to_string(truth.labels.size()) + " labels, views have " +
                           std::to_string(n) + " samples");
  }
  return truth.labels;
}

int RunEval(const ModelArgs& a, const std::string& predictions_out) {
  const sagl::SaglModel model = sagl::LoadModel(a.model);
  const std::vector<sagl::Matrix> views = LoadViews(a.views);
  if (views.empty()) throw sagl::InvalidArgumentError("no views");
  std::vector<std::size_t> truth;
  if (!a.labels.empty()) truth = ReadTruth(a.labels, views[0].rows());
  const sagl::Evaluation eval = sagl::Evaluate(model, views, BatchSize(a, model), truth);

  if (!truth.empty()) {
    std::cout << sagl::MakeReport(eval, truth).ToJson() << '\n';
    return kExitOk;
  }
  const fs::path out =
      predictions_out.empty() ? fs::path(a.model) / "predictions.lbl" : fs::path(predictions_out);
  sagl::LabelVector pred{eval.predictions, model.num_classes()};
  sagl::WriteLabels(out, pred);
  nlohmann::json j;
  j["n"] = eval.predictions.size();
  j["predictions_file"] = out.string();
  j["predictions"] = eval.predictions;
  std::cout << j.dump() << '\n';
  return kExitOk;
}

struct GraphArgs {
  ModelArgs model;
  std::size_t view = 0;
  std::size_t batch = 0;
  std::string out;
};

int RunInspectGraph(const GraphArgs& a) {
  const sagl::SaglModel model = sagl::LoadModel(a.model.model);
  const std::vector<sagl::Matrix> views = LoadViews(a.model.views);
  if (views.empty()) throw sagl::InvalidArgumentError("no views");
  if (a.view >= views.size()) {
    throw sagl::InvalidArgumentError("--view " + std::to_string(a.view) + " out of range (" +
                                     std::to_string(views.size()) + " views)");
  }
  const std::size_t n = views[0].rows();
  const auto batches = sagl::EvaluationBatches(n, BatchSize(a.model, model));
  if (a.batch >= batches.size()) {
    throw sagl::InvalidArgumentError("--batch " + std::to_string(a.batch) + " out of range (" +
                                     std::to_string(batches.size()) + " batches)");
  }
  const auto& idx = batches[a.batch];
  const auto traces = sagl::ForwardBatch(model, views, idx);
  const sagl::SparseAttentionGraph& graph = traces[a.view].graph;
  sagl::WriteMatrix(a.out, graph.Dense());

  nlohmann::json j;
  j["view"] = a.view;
  j["batch"] = a.batch;
  j["n"] = idx.size();
  j["sparsity_ratio"] = sagl::SparsityRatio(graph);
  if (!a.model.labels.empty()) {
    const std::vector<std::size_t> truth = ReadTruth(a.model.labels, n);
    std::vector<std::size_t> batch_truth;
    for (std::size_t i : idx) batch_truth.push_back(truth[i]);
    bool has_mass = false;
    for (const auto& row : graph.rows) has_mass = has_mass || !row.support.empty();
    j["intra_block_mass"] = has_mass ? nlohmann::json(sagl::IntraBlockMass(graph, batch_truth))
                                     : nlohmann::json(nullptr);
  }
  std::cout << j.dump() << '\n';
  return kExitOk;
}

int RunExportRepr(const GraphArgs& a) {
  const sagl::SaglModel model = sagl::LoadModel(a.model.model);
  const std::vector<sagl::Matrix> views = LoadViews(a.model.views);
  if (views.empty()) throw sagl::InvalidArgumentError("no views");
  if (a.view >= views.size()) {
    throw sagl::InvalidArgumentError("--view " + std::to_string(a.view) + " out of range (" +
                                     std::to_string(views.size()) + " views)");
  }
  const sagl::Evaluation eval = sagl::Evaluate(model, views, BatchSize(a.model, model));
  const sagl::Matrix& p = eval.representations[a.view];
  sagl::WriteMatrix(a.out, p);
  std::cerr << "wrote " << p.rows() << 'x' << p.cols() << " representations to " << a.out << '\n';
  return kExitOk;
}

// check ---------------------------------------------------------------------

int RunCheck(const std::string& suite, std::optional<std::uint64_t> seed) {
  if (suite != "theorems") throw sagl::InvalidArgumentError("unknown suite '" + suite + "'");
  const std::uint64_t s = seed ? *seed : EnvSeed().value_or(0);
  const std::vector<sagl::CheckResult> results = sagl::RunTheoremChecks(s);
  bool ok = true;
  std::printf("%-18s %-6s %-13s %-11s %s\n", "check", "status", "residual", "threshold", "detail");
  for (const auto& r : results) {
    std::printf("%-18s %-6s %-13.6g %-11.3g %s\n", r.name.c_str(), r.passed ? "PASS" : "FAIL",
                r.residual, r.threshold, r.detail.c_str());
    if (!r.passed) {
      ok = false;
      std::cerr << "check " << r.name << " failed: residual " << r.residual << " > "
                << r.threshold << '\n';
    }
  }
  return ok ? kExitOk : kExitFailure;
}

void AddModelOptions(CLI::App* cmd, ModelArgs& a, bool labels) {
  cmd->add_option("--model", a.model, "Checkpoint directory")->required();
  cmd->add_option("--views", a.views, "Feature files, one per view")->required();
  if (labels) cmd->add_option("--labels", a.labels, "Ground-truth label file");
  cmd->add_option("--batch-size", a.batch_size, "Evaluation batch size (default: checkpoint's)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse attention graph learning for multiview clustering"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a synthetic union-of-subspaces dataset");
  generate->add_option("--out", gen.out, "Output directory")->required();
  generate->add_option("--subspaces", gen.spec.subspaces, "Number of subspaces K");
  generate->add_option("--subspace-dim", gen.spec.subspace_dim, "Subspace dimension");
  generate->add_option("--ambient-dim", gen.spec.ambient_dim, "Ambient dimension D");
  generate->add_option("--per-class", gen.spec.per_class, "Training samples per subspace");
  generate->add_option("--test-per-class", gen.spec.test_per_class, "Held-out samples per subspace");
  generate->add_option("--noise", gen.spec.noise_sigma, "Noise standard deviation");
  generate->add_option("--views", gen.spec.views, "Number of views");
  generate->add_option("--min-principal-angle", gen.spec.min_principal_angle_deg,
                       "Smallest principal angle between subspaces, degrees");
  generate->add_option("--seed", gen.seed, "Seed (falls back to SAGL_SEED, then 0)");
  generate->add_option("--dtype", gen.dtype, "On-disk precision")
      ->check(CLI::IsMember({"f32", "f64"}));

  TrainArgs tr;
  auto* train = app.add_subcommand("train", "Train a model");
  train->add_option("--views", tr.views, "Feature files, one per view")->required();
  train->add_option("--config", tr.config, "key=value config file; flags override it");
  train->add_option("--out", tr.out, "Checkpoint directory")->required();
  std::map<std::string, std::string> flag_values;
  std::map<std::string, CLI::Option*> flag_options;
  for (const std::string& key : sagl::ConfigKeys()) {
    std::string flag = "--" + key;
    for (char& ch : flag) ch = ch == '_' ? '-' : ch;
    flag_options[key] = train->add_option(flag, flag_values[key], "Overrides config key " + key);
  }

  ModelArgs ev;
  std::string predictions_out;
  auto* eval = app.add_subcommand("eval", "Predict and, given labels, score a model");
  AddModelOptions(eval, ev, true);
  eval->add_option("--predictions-out", predictions_out,
                   "Predictions file when --labels is absent (default: <model>/predictions.lbl)");

  GraphArgs ig;
  auto* inspect = app.add_subcommand("inspect-graph", "Export one batch attention graph");
  AddModelOptions(inspect, ig.model, true);
  inspect->add_option("--view", ig.view, "View index");
  inspect->add_option("--batch", ig.batch, "Evaluation batch index");
  inspect->add_option("--out", ig.out, "Output matrix file")->required();

  GraphArgs ex;
  auto* export_repr = app.add_subcommand("export-repr", "Export aggregated representations P");
  AddModelOptions(export_repr, ex.model, false);
  export_repr->add_option("--view", ex.view, "View index");
  export_repr->add_option("--out", ex.out, "Output matrix file")->required();

  std::string suite = "theorems";
  std::optional<std::uint64_t> check_seed;
  auto* check = app.add_subcommand("check", "Run the seeded theorem checks");
  check->add_option("--suite", suite, "Suite name")->check(CLI::IsMember({"theorems"}));
  check->add_option("--seed", check_seed, "Seed (falls back to SAGL_SEED, then 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*generate) return RunGenerate(gen);
    if (*train) {
      for (const auto& [key, option] : flag_options) {
        if (option->count() > 0) tr.overrides[key] = flag_values[key];
      }
      return RunTrain(tr);
    }
    if (*eval) return RunEval(ev, predictions_out);
    if (*inspect) return RunInspectGraph(ig);
    if (*export_repr) return RunExportRepr(ex);
    if (*check) return RunCheck(suite, check_seed);
  } catch (const sagl::ShapeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitShape;
  } catch (const sagl::ConsistencyError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitShape;
  } catch (const sagl::NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const sagl::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
