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

#ifndef SAGL_ADAM_H_
#define SAGL_ADAM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "sagl/matrix.h"

namespace sagl {

struct AdamState {
  std::vector<Matrix> first_moment;
  std::vector<Matrix> second_moment;
  std::uint64_t step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// One bias-corrected Adam update applied elementwise to every parameter.
// Moments are allocated on the first call. Throws ShapeError when the
// parameter, gradient and moment shapes disagree.
void AdamStep(std::span<Matrix* const> params, std::span<const Matrix> grads, AdamState& state,
              double lr);

}  // namespace sagl

#endif  // SAGL_ADAM_H_
