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

#include "sagl/checkpoint.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "sagl/config.h"
#include "sagl/errors.h"
#include "sagl/io.h"

namespace sagl {
namespace {

constexpr const char* kManifest = "manifest.txt";
constexpr const char* kParamNames[] = {"W", "U", "V", "W1", "W2"};

std::filesystem::path ParamPath(const std::filesystem::path& dir, std::size_t view,
                                const char* name) {
  return dir / ("view" + std::to_string(view) + "_" + name + ".fmat");
}

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::size_t ParseCount(const std::map<std::string, std::string>& kv, const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw FormatError("manifest: missing key '" + key + "'");
  std::size_t v = 0;
  const std::string& s = it->second;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw FormatError("manifest: '" + key + "' is not a count: '" + s + "'");
  }
  return v;
}

void ExpectShape(const Matrix& m, std::size_t rows, std::size_t cols, const std::string& what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw ConsistencyError("checkpoint: " + what + " payload is " + std::to_string(m.rows()) +
                           "x" + std::to_string(m.cols()) + " but the manifest implies " +
                           std::to_string(rows) + "x" + std::to_string(cols));
  }
}

}  // namespace

void SaveModel(const SaglModel& model, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create checkpoint directory '" + dir.string() + "': " + ec.message());

  std::ostringstream os;
  os << "format_version=" << kCheckpointFormatVersion << "\n";
  os << "L=" << model.num_views() << "\n";
  os << "C=" << model.num_classes() << "\n";
  for (std::size_t l = 0; l < model.num_views(); ++l) {
    os << "d_" << l << "=" << model.views[l].head.w.rows() << "\n";
  }
  const std::size_t hidden = model.views.empty() ? 0 : model.views[0].gate.hidden();
  os << "gate_hidden=" << hidden << "\n";
  os << "gate_mode=" << ToString(model.config.gate_mode) << "\n";
  os << "alpha=" << FormatDouble(model.config.alpha) << "\n";
  std::istringstream cfg(FormatConfig(model.config));
  for (std::string line; std::getline(cfg, line);) os << "config." << line << "\n";

  const std::string text = os.str();
  WriteFileBytes(dir / kManifest, std::span<const std::uint8_t>(
                                      reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));

  for (std::size_t l = 0; l < model.num_views(); ++l) {
    const ViewParams& p = model.views[l];
    const Matrix* mats[] = {&p.head.w, &p.factor.u, &p.factor.v, &p.gate.w1, &p.gate.w2};
    for (std::size_t k = 0; k < 5; ++k) WriteMatrix(ParamPath(dir, l, kParamNames[k]), *mats[k]);
  }
}

SaglModel LoadModel(const std::filesystem::path& dir) {
  const std::filesystem::path manifest_path = dir / kManifest;
  std::ifstream in(manifest_path);
  if (!in) throw IoError("checkpoint manifest '" + manifest_path.string() + "' not found");

  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw FormatError("manifest line " + std::to_string(line_no) + ": expected key=value");
    }
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }

  const std::size_t version = ParseCount(kv, "format_version");
  if (version != static_cast<std::size_t>(kCheckpointFormatVersion)) {
    throw FormatError("manifest: unsupported format_version " + std::to_string(version));
  }

  TrainConfig config;
  for (const auto& [key, value] : kv) {
    if (key.rfind("config.", 0) != 0) continue;
    try {
      ApplyConfigValue(config, key.substr(7), value);
    } catch (const ConfigError& e) {
      throw FormatError(std::string("manifest: ") + e.what());
    }
  }

  const std::size_t num_views = ParseCount(kv, "L");
  const std::size_t c = ParseCount(kv, "C");
  const std::size_t hidden = ParseCount(kv, "gate_hidden");
  if (num_views == 0 || c == 0 || hidden == 0) {
    throw FormatError("manifest: L, C and gate_hidden must be positive");
  }
  if (config.num_classes != c) {
    throw ConsistencyError("manifest: C=" + std::to_string(c) + " but config.num_classes=" +
                           std::to_string(config.num_classes));
  }
  if (const auto it = kv.find("gate_mode"); it == kv.end() ||
                                            it->second != ToString(config.gate_mode)) {
    throw ConsistencyError("manifest: gate_mode disagrees with config.gate_mode");
  }

  if (const auto it = kv.find("alpha"); it == kv.end() || it->second != FormatDouble(config.alpha)) {
    throw ConsistencyError("manifest: alpha disagrees with config.alpha");
  }
  if (hidden != config.EffectiveGateHidden()) {
    throw ConsistencyError("manifest: gate_hidden=" + std::to_string(hidden) +
                           " but the config implies " +
                           std::to_string(config.EffectiveGateHidden()));
  }

  SaglModel model;
  model.config = config;
  for (std::size_t l = 0; l < num_views; ++l) {
    const std::size_t d = ParseCount(kv, "d_" + std::to_string(l));
    ViewParams p;
    Matrix* mats[] = {&p.head.w, &p.factor.u, &p.factor.v, &p.gate.w1, &p.gate.w2};
    const std::size_t shapes[5][2] = {{d, c}, {c, c}, {c, c}, {hidden, c}, {1, hidden}};
    for (std::size_t k = 0; k < 5; ++k) {
      *mats[k] = ReadMatrix(ParamPath(dir, l, kParamNames[k])).values;
      ExpectShape(*mats[k], shapes[k][0], shapes[k][1],
                  "view" + std::to_string(l) + "_" + kParamNames[k]);
    }
    p.gate.mode = config.gate_mode;
    p.gate.epsilon = config.gate_epsilon;
    model.views.push_back(std::move(p));
  }
  return model;
}

}  // namespace sagl
