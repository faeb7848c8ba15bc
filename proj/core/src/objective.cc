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

#include "sagl/objective.h"

#include <cmath>
#include <string>

#include "sagl/errors.h"

namespace sagl {
namespace {

void CheckViews(std::span<const Matrix> q_views, const char* op) {
  if (q_views.empty()) throw InvalidArgumentError(std::string(op) + ": no views");
  const std::size_t n = q_views[0].rows();
  const std::size_t c = q_views[0].cols();
  if (n == 0 || c == 0) throw InvalidArgumentError(std::string(op) + ": empty assignment matrix");
  for (const Matrix& q : q_views) {
    if (q.rows() != n || q.cols() != c) {
      throw ShapeError(std::string(op) + ": views have inconsistent shapes");
    }
  }
}

double ClampedLog(double p) { return std::log(p < kLogClamp ? kLogClamp : p); }

std::vector<Matrix> ZeroGrads(std::span<const Matrix> q_views) {
  std::vector<Matrix> grads;
  grads.reserve(q_views.size());
  for (const Matrix& q : q_views) grads.emplace_back(q.rows(), q.cols());
  return grads;
}

}  // namespace

PseudoLabels MakePseudoLabels(std::span<const Matrix> q_views) {
  CheckViews(q_views, "MakePseudoLabels");
  const std::size_t n = q_views[0].rows();
  const std::size_t c = q_views[0].cols();
  const double inv_views = 1.0 / static_cast<double>(q_views.size());
  PseudoLabels out;
  out.labels.resize(n);
  std::vector<double> mean(c);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(mean.begin(), mean.end(), 0.0);
    for (const Matrix& q : q_views) {
      auto row = q.row(i);
      for (std::size_t k = 0; k < c; ++k) mean[k] += row[k];
    }
    std::size_t best = 0;
    for (std::size_t k = 0; k < c; ++k) {
      mean[k] *= inv_views;
      if (mean[k] > mean[best]) best = k;
    }
    out.labels[i] = best;
  }
  return out;
}

LossWithGrad PseudoLabelLoss(std::span<const Matrix> q_views, const PseudoLabels& labels) {
  CheckViews(q_views, "PseudoLabelLoss");
  const std::size_t n = q_views[0].rows();
  const std::size_t c = q_views[0].cols();
  if (labels.labels.size() != n) {
    throw ShapeError("PseudoLabelLoss: " + std::to_string(labels.labels.size()) +
                     " labels for " + std::to_string(n) + " samples");
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  LossWithGrad out;
  out.grads = ZeroGrads(q_views);
  for (std::size_t l = 0; l < q_views.size(); ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t y = labels.labels[i];
      if (y >= c) throw InvalidArgumentError("PseudoLabelLoss: label out of range");
      const double p = q_views[l](i, y);
      out.value -= inv_n * ClampedLog(p);
      if (p >= kLogClamp) out.grads[l](i, y) = -inv_n / p;
    }
  }
  return out;
}

LossWithGrad DiversityLoss(std::span<const Matrix> q_views) {
  CheckViews(q_views, "DiversityLoss");
  const std::size_t n = q_views[0].rows();
  const std::size_t c = q_views[0].cols();
  const double inv_n = 1.0 / static_cast<double>(n);
  LossWithGrad out;
  out.grads = ZeroGrads(q_views);
  std::vector<double> mean(c);
  for (std::size_t l = 0; l < q_views.size(); ++l) {
    std::fill(mean.begin(), mean.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      auto row = q_views[l].row(i);
      for (std::size_t k = 0; k < c; ++k) mean[k] += row[k];
    }
    for (std::size_t k = 0; k < c; ++k) {
      mean[k] *= inv_n;
      out.value += mean[k] * ClampedLog(mean[k]);
      const double d = mean[k] >= kLogClamp ? inv_n * (std::log(mean[k]) + 1.0) : 0.0;
      for (std::size_t i = 0; i < n; ++i) out.grads[l](i, k) = d;
    }
  }
  return out;
}

LossWithGrad AlignmentLoss(std::span<const Matrix> q_views, AlignmentGradient mode) {
  CheckViews(q_views, "AlignmentLoss");
  if (q_views.size() < 2) {
    throw InvalidArgumentError("AlignmentLoss: needs at least two views, got " +
                               std::to_string(q_views.size()));
  }
  const std::size_t n = q_views[0].rows();
  const std::size_t c = q_views[0].cols();
  const double inv_n = 1.0 / static_cast<double>(n);
  LossWithGrad out;
  out.grads = ZeroGrads(q_views);
  for (std::size_t mu = 0; mu < q_views.size(); ++mu) {
    for (std::size_t nu = 0; nu < q_views.size(); ++nu) {
      if (mu == nu) continue;
      const Matrix& target = q_views[mu];
      const Matrix& pred = q_views[nu];
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < c; ++k) {
          const double t = target(i, k);
          const double p = pred(i, k);
          const double log_p = ClampedLog(p);
          out.value -= inv_n * t * log_p;
          if (p >= kLogClamp) out.grads[nu](i, k) -= inv_n * t / p;
          if (mode == AlignmentGradient::kFull) out.grads[mu](i, k) -= inv_n * log_p;
        }
      }
    }
  }
  return out;
}

TotalLoss ComputeTotalLoss(std::span<const Matrix> q_views, double gamma, double beta,
                           AlignmentGradient mode) {
  if (gamma < 0.0 || beta < 0.0) {
    throw InvalidArgumentError("ComputeTotalLoss: gamma and beta must be >= 0");
  }
  CheckViews(q_views, "ComputeTotalLoss");
  TotalLoss out;
  out.labels = MakePseudoLabels(q_views);
  LossWithGrad pseudo = PseudoLabelLoss(q_views, out.labels);
  const LossWithGrad diversity = DiversityLoss(q_views);
  out.breakdown.gamma = gamma;
  out.breakdown.beta = beta;
  out.breakdown.pseudo = pseudo.value;
  out.breakdown.diversity = diversity.value;
  out.grads = std::move(pseudo.grads);
  for (std::size_t l = 0; l < q_views.size(); ++l) Axpy(gamma, diversity.grads[l], out.grads[l]);
  if (q_views.size() >= 2) {
    const LossWithGrad align = AlignmentLoss(q_views, mode);
    out.breakdown.alignment = align.value;
    for (std::size_t l = 0; l < q_views.size(); ++l) Axpy(beta, align.grads[l], out.grads[l]);
  }
  out.breakdown.total = out.breakdown.pseudo + gamma * out.breakdown.diversity +
                        beta * out.breakdown.alignment;
  return out;
}

double TotalLossWithFixedTargets(std::span<const Matrix> q_views, const PseudoLabels& labels,
                                 std::span<const Matrix> align_targets, double gamma,
                                 double beta) {
  CheckViews(q_views, "TotalLossWithFixedTargets");
  if (align_targets.size() != q_views.size()) {
    throw ShapeError("TotalLossWithFixedTargets: one alignment target per view required");
  }
  const std::size_t n = q_views[0].rows();
  const std::size_t c = q_views[0].cols();
  const double inv_n = 1.0 / static_cast<double>(n);
  double align = 0.0;
  for (std::size_t mu = 0; mu < q_views.size(); ++mu) {
    for (std::size_t nu = 0; nu < q_views.size(); ++nu) {
      if (mu == nu) continue;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < c; ++k)
          align -= inv_n * align_targets[mu](i, k) * ClampedLog(q_views[nu](i, k));
    }
  }
  return PseudoLabelLoss(q_views, labels).value + gamma * DiversityLoss(q_views).value +
         beta * align;
}

}  // namespace sagl
