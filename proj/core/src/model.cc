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

#include "sagl/model.h"

#include <cmath>

#include "sagl/errors.h"
#include "sagl/rng.h"

namespace sagl {
namespace {

constexpr std::uint64_t kInitStream = 0x494E4954;  // "INIT"
constexpr double kGateStddev = 0.02;
constexpr double kFactorStddev = 0.01;

}  // namespace

std::vector<Matrix*> SaglModel::Parameters() {
  std::vector<Matrix*> out;
  for (ViewParams& v : views) {
    out.push_back(&v.head.w);
    out.push_back(&v.factor.u);
    out.push_back(&v.factor.v);
    out.push_back(&v.gate.w1);
    out.push_back(&v.gate.w2);
  }
  return out;
}

std::vector<const Matrix*> SaglModel::Parameters() const {
  std::vector<const Matrix*> out;
  for (const ViewParams& v : views) {
    out.push_back(&v.head.w);
    out.push_back(&v.factor.u);
    out.push_back(&v.factor.v);
    out.push_back(&v.gate.w1);
    out.push_back(&v.gate.w2);
  }
  return out;
}

SaglModel InitModel(std::span<const std::size_t> view_dims, const TrainConfig& config) {
  if (view_dims.empty()) throw InvalidArgumentError("InitModel: no views");
  if (config.num_classes == 0) throw InvalidArgumentError("InitModel: num_classes must be >= 1");
  const std::size_t c = config.num_classes;
  const std::size_t hidden = config.EffectiveGateHidden();

  SaglModel model;
  model.config = config;
  const Rng root = Rng(config.seed).Split(kInitStream);
  for (std::size_t l = 0; l < view_dims.size(); ++l) {
    if (view_dims[l] == 0) throw InvalidArgumentError("InitModel: view with zero features");
    Rng rng = root.Split(l);
    ViewParams p;
    p.head.w = RandNormal(rng, view_dims[l], c, 1.0 / std::sqrt(static_cast<double>(view_dims[l])));
    p.factor.u = Add(Matrix::Identity(c), RandNormal(rng, c, c, kFactorStddev));
    p.factor.v = Add(Matrix::Identity(c), RandNormal(rng, c, c, kFactorStddev));
    p.gate.w1 = RandNormal(rng, hidden, c, kGateStddev);
    p.gate.w2 = RandNormal(rng, 1, hidden, kGateStddev);
    p.gate.mode = config.gate_mode;
    p.gate.epsilon = config.gate_epsilon;
    model.views.push_back(std::move(p));
  }
  return model;
}

}  // namespace sagl
