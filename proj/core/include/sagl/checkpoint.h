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

#ifndef SAGL_CHECKPOINT_H_
#define SAGL_CHECKPOINT_H_

// A checkpoint is a directory holding
//
//   manifest.txt       key=value lines: format_version, L, C, d_<l> per view,
//                      gate_hidden, gate_mode, alpha, then the full training
//                      configuration under "config." keys
//   view<l>_<name>.fmat  one float64 matrix file per parameter, name in
//                      {W, U, V, W1, W2}

#include <filesystem>

#include "sagl/model.h"

namespace sagl {

inline constexpr int kCheckpointFormatVersion = 1;

// Creates the directory when needed. Throws IoError on filesystem failure.
void SaveModel(const SaglModel& model, const std::filesystem::path& dir);

// Throws IoError for missing files, FormatError for a bad manifest or payload
// header, and ConsistencyError when the manifest and payload shapes disagree.
SaglModel LoadModel(const std::filesystem::path& dir);

}  // namespace sagl

#endif  // SAGL_CHECKPOINT_H_
