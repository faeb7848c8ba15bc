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

#ifndef SAGL_OBJECTIVE_H_
#define SAGL_OBJECTIVE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "sagl/matrix.h"

namespace sagl {

// Probabilities are clamped to this value inside every logarithm. Where the
// clamp is active the corresponding gradient is zero.
inline constexpr double kLogClamp = 1e-12;

struct PseudoLabels {
  std::vector<std::size_t> labels;
};

struct LossBreakdown {
  double pseudo = 0.0;
  double diversity = 0.0;
  double alignment = 0.0;
  double total = 0.0;
  double gamma = 0.0;
  double beta = 0.0;
};

// A loss value together with dLoss/dQ for every view.
struct LossWithGrad {
  double value = 0.0;
  std::vector<Matrix> grads;
};

// How the cross-view alignment term is differentiated. kStopTarget treats the
// target distribution Q^(mu) as a constant; kFull also differentiates it.
enum class AlignmentGradient { kStopTarget, kFull };

// Consensus argmax of the view-averaged assignments; ties go to the lowest
// class. Throws InvalidArgumentError on an empty list, ShapeError on
// inconsistent shapes.
PseudoLabels MakePseudoLabels(std::span<const Matrix> q_views);

// -(1/n) sum_l sum_i log Q^(l)[i, y_i].
LossWithGrad PseudoLabelLoss(std::span<const Matrix> q_views, const PseudoLabels& labels);

// sum_l sum_j qbar_j log qbar_j with qbar the batch mean of Q^(l).
LossWithGrad DiversityLoss(std::span<const Matrix> q_views);

// -(1/n) sum_i sum_{mu != nu} sum_j Q^(mu)[i,j] log Q^(nu)[i,j].
// Throws InvalidArgumentError with fewer than two views.
LossWithGrad AlignmentLoss(std::span<const Matrix> q_views,
                           AlignmentGradient mode = AlignmentGradient::kStopTarget);

struct TotalLoss {
  LossBreakdown breakdown;
  PseudoLabels labels;
  std::vector<Matrix> grads;
};

// pseudo + gamma * diversity + beta * alignment. Pseudolabels are computed
// from q_views and detached. With a single view the alignment term is zero.
TotalLoss ComputeTotalLoss(std::span<const Matrix> q_views, double gamma, double beta,
                           AlignmentGradient mode = AlignmentGradient::kStopTarget);

// Same objective with externally fixed pseudolabels and alignment targets.
// Used to check the detached gradients against finite differences.
double TotalLossWithFixedTargets(std::span<const Matrix> q_views, const PseudoLabels& labels,
                                 std::span<const Matrix> align_targets, double gamma,
                                 double beta);

}  // namespace sagl

#endif  // SAGL_OBJECTIVE_H_
