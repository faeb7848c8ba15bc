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

#include "sagl/adam.h"

#include <cmath>
#include <string>

#include "sagl/errors.h"

namespace sagl {

void AdamStep(std::span<Matrix* const> params, std::span<const Matrix> grads, AdamState& state,
              double lr) {
  if (params.size() != grads.size()) {
    throw ShapeError("AdamStep: " + std::to_string(params.size()) + " parameters but " +
                     std::to_string(grads.size()) + " gradients");
  }
  if (state.first_moment.empty()) {
    for (const Matrix* p : params) {
      state.first_moment.emplace_back(p->rows(), p->cols());
      state.second_moment.emplace_back(p->rows(), p->cols());
    }
  }
  if (state.first_moment.size() != params.size()) {
    throw ShapeError("AdamStep: optimizer state tracks a different parameter count");
  }

  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(state.beta1, t);
  const double correction2 = 1.0 - std::pow(state.beta2, t);

  for (std::size_t k = 0; k < params.size(); ++k) {
    Matrix& p = *params[k];
    const Matrix& g = grads[k];
    Matrix& m = state.first_moment[k];
    Matrix& v = state.second_moment[k];
    if (g.rows() != p.rows() || g.cols() != p.cols() || m.rows() != p.rows() ||
        m.cols() != p.cols()) {
      throw ShapeError("AdamStep: shape mismatch for parameter " + std::to_string(k));
    }
    auto pd = p.data();
    auto gd = g.data();
    auto md = m.data();
    auto vd = v.data();
    for (std::size_t i = 0; i < pd.size(); ++i) {
      md[i] = state.beta1 * md[i] + (1.0 - state.beta1) * gd[i];
      vd[i] = state.beta2 * vd[i] + (1.0 - state.beta2) * gd[i] * gd[i];
      const double m_hat = md[i] / correction1;
      const double v_hat = vd[i] / correction2;
      pd[i] -= lr * m_hat / (std::sqrt(v_hat) + state.epsilon);
    }
  }
}

}  // namespace sagl
