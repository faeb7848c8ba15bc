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

#include "sagl/config.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sagl/errors.h"

namespace sagl {
namespace {

std::string_view Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double ParseDouble(std::string_view key, std::string_view value) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(v)) {
    throw ConfigError(std::string(key) + ": cannot parse '" + std::string(value) + "' as a number");
  }
  return v;
}

std::uint64_t ParseUnsigned(std::string_view key, std::string_view value) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError(std::string(key) + ": cannot parse '" + std::string(value) +
                      "' as a non-negative integer");
  }
  return v;
}

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

const std::vector<std::string>& ConfigKeys() {
  static const std::vector<std::string> keys = {
      "alpha",   "gamma",       "beta",        "lr",           "batch_size",
      "epochs",  "num_classes", "gate_mode",   "gate_hidden",  "gate_epsilon",
      "dropout", "seed",        "variant",     "drop_small_batch_threshold"};
  return keys;
}

void ApplyConfigValue(TrainConfig& c, std::string_view key, std::string_view raw) {
  const std::string_view value = Trim(raw);
  const std::string k(key);
  if (key == "alpha") {
    c.alpha = ParseDouble(key, value);
    if (c.alpha < 1.0) throw ConfigError("alpha: must be >= 1, got " + std::string(value));
  } else if (key == "gamma") {
    c.gamma = ParseDouble(key, value);
    if (c.gamma < 0.0) throw ConfigError("gamma: must be >= 0");
  } else if (key == "beta") {
    c.beta = ParseDouble(key, value);
    if (c.beta < 0.0) throw ConfigError("beta: must be >= 0");
  } else if (key == "lr") {
    c.lr = ParseDouble(key, value);
    if (c.lr <= 0.0) throw ConfigError("lr: must be > 0");
  } else if (key == "batch_size") {
    c.batch_size = ParseUnsigned(key, value);
    if (c.batch_size < 2) throw ConfigError("batch_size: must be >= 2");
  } else if (key == "epochs") {
    c.epochs = ParseUnsigned(key, value);
    if (c.epochs < 1) throw ConfigError("epochs: must be >= 1");
  } else if (key == "num_classes") {
    c.num_classes = ParseUnsigned(key, value);
    if (c.num_classes < 1) throw ConfigError("num_classes: must be >= 1");
  } else if (key == "gate_mode") {
    try {
      c.gate_mode = ParseGateMode(value);
    } catch (const InvalidArgumentError& e) {
      throw ConfigError(std::string("gate_mode: ") + e.what());
    }
  } else if (key == "gate_hidden") {
    c.gate_hidden = ParseUnsigned(key, value);
  } else if (key == "gate_epsilon") {
    c.gate_epsilon = ParseDouble(key, value);
    if (c.gate_epsilon <= 0.0) throw ConfigError("gate_epsilon: must be > 0");
  } else if (key == "dropout") {
    c.dropout = ParseDouble(key, value);
    if (c.dropout < 0.0 || c.dropout >= 1.0) throw ConfigError("dropout: must be in [0, 1)");
  } else if (key == "seed") {
    c.seed = ParseUnsigned(key, value);
  } else if (key == "variant") {
    try {
      c.variant = ParseVariant(value);
    } catch (const InvalidArgumentError& e) {
      throw ConfigError(std::string("variant: ") + e.what());
    }
  } else if (key == "drop_small_batch_threshold") {
    c.drop_small_batch_threshold = ParseDouble(key, value);
    if (c.drop_small_batch_threshold < 0.0 || c.drop_small_batch_threshold > 1.0) {
      throw ConfigError("drop_small_batch_threshold: must be in [0, 1]");
    }
  } else {
    throw ConfigError("unknown config key '" + k + "'");
  }
}

TrainConfig ParseConfigText(std::string_view text, std::string_view origin) {
  TrainConfig config;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) +
                        ": expected key=value, got '" + std::string(line) + "'");
    }
    try {
      ApplyConfigValue(config, Trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return config;
}

TrainConfig ParseConfigFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseConfigText(ss.str(), path.string());
}

std::string FormatConfig(const TrainConfig& c) {
  std::ostringstream os;
  os << "alpha=" << FormatDouble(c.alpha) << "\n"
     << "gamma=" << FormatDouble(c.gamma) << "\n"
     << "beta=" << FormatDouble(c.beta) << "\n"
     << "lr=" << FormatDouble(c.lr) << "\n"
     << "batch_size=" << c.batch_size << "\n"
     << "epochs=" << c.epochs << "\n"
     << "num_classes=" << c.num_classes << "\n"
     << "gate_mode=" << ToString(c.gate_mode) << "\n"
     << "gate_hidden=" << c.gate_hidden << "\n"
     << "gate_epsilon=" << FormatDouble(c.gate_epsilon) << "\n"
     << "dropout=" << FormatDouble(c.dropout) << "\n"
     << "seed=" << c.seed << "\n"
     << "variant=" << ToString(c.variant) << "\n"
     << "drop_small_batch_threshold=" << FormatDouble(c.drop_small_batch_threshold) << "\n";
  return os.str();
}

}  // namespace sagl
