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

#ifndef SAGL_MODEL_H_
#define SAGL_MODEL_H_

#include <cstddef>
#include <span>
#include <vector>

#include "sagl/graph_model.h"
#include "sagl/train_config.h"

namespace sagl {

// Learnable parameters for all views plus the configuration they were built with.
struct SaglModel {
  std::vector<ViewParams> views;
  TrainConfig config;

  std::size_t num_views() const { return views.size(); }
  std::size_t num_classes() const { return config.num_classes; }

  // Every parameter matrix in a fixed order: per view W, U, V, W1, W2.
  std::vector<Matrix*> Parameters();
  std::vector<const Matrix*> Parameters() const;
};

// Heads ~ N(0, 1/d_l); gate weights ~ N(0, 0.02^2); U and V = I + N(0, 0.01^2).
// Each view draws from its own stream of the config seed.
SaglModel InitModel(std::span<const std::size_t> view_dims, const TrainConfig& config);

}  // namespace sagl

#endif  // SAGL_MODEL_H_
