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

#ifndef SAGL_CONFIG_H_
#define SAGL_CONFIG_H_

// Training configuration as text: one key=value per line, '#' starts a
// comment, blank lines are ignored. Keys:
//
//   alpha gamma beta lr batch_size epochs num_classes gate_mode gate_hidden
//   gate_epsilon dropout seed variant drop_small_batch_threshold

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sagl/train_config.h"

namespace sagl {

// Names of every accepted key, in canonical order.
const std::vector<std::string>& ConfigKeys();

// Sets one key. Throws ConfigError naming the key for an unknown key, an
// unparsable value or a violated constraint.
void ApplyConfigValue(TrainConfig& config, std::string_view key, std::string_view value);

// Parses config text over the defaults. `origin` prefixes error messages.
TrainConfig ParseConfigText(std::string_view text, std::string_view origin = "<config>");

// Throws IoError when the file cannot be read.
TrainConfig ParseConfigFile(const std::filesystem::path& path);

// Canonical key=value lines; doubles are written with 17 significant digits
// so parsing the output reproduces the config exactly.
std::string FormatConfig(const TrainConfig& config);

}  // namespace sagl

#endif  // SAGL_CONFIG_H_
