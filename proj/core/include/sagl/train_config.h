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

#ifndef SAGL_TRAIN_CONFIG_H_
#define SAGL_TRAIN_CONFIG_H_

#include <cstddef>
#include <cstdint>

#include "sagl/graph_model.h"

namespace sagl {

struct TrainConfig {
  double alpha = 1.5;
  double gamma = 10.0;
  double beta = 1.0;
  double lr = 1e-3;
  std::size_t batch_size = 100;
  std::size_t epochs = 600;
  // Number of categories C; must be set before training.
  std::size_t num_classes = 0;
  GateMode gate_mode = GateMode::kMultiplicative;
  // Gate hidden width H; 0 means "same as num_classes".
  std::size_t gate_hidden = 0;
  double gate_epsilon = 1e-6;
  double dropout = 0.0;
  std::uint64_t seed = 0;
  Variant variant = Variant::kFull;
  // Training batches smaller than this fraction of batch_size are skipped.
  double drop_small_batch_threshold = 0.5;

  std::size_t EffectiveGateHidden() const { return gate_hidden == 0 ? num_classes : gate_hidden; }
};

}  // namespace sagl

#endif  // SAGL_TRAIN_CONFIG_H_
