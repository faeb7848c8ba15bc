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

#include "sagl/entmax.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "sagl/errors.h"

namespace sagl {
namespace {

// Unmasked scores shifted so that their maximum is zero.
struct ShiftedScores {
  std::vector<std::size_t> index;
  std::vector<double> value;
  double shift = 0.0;
};

ShiftedScores Prepare(std::span<const double> scores) {
  ShiftedScores s;
  s.shift = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < scores.size(); ++j) {
    const double v = scores[j];
    if (v == kMasked) continue;
    if (!std::isfinite(v)) {
      throw InvalidArgumentError("Entmax: score " + std::to_string(j) + " is not finite");
    }
    s.index.push_back(j);
    s.value.push_back(v);
    s.shift = std::max(s.shift, v);
  }
  if (s.index.empty()) throw InvalidArgumentError("Entmax: every entry is masked");
  for (double& v : s.value) v -= s.shift;
  return s;
}

std::vector<double> SortedDescending(const std::vector<double>& v) {
  std::vector<double> sorted = v;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  return sorted;
}

// Threshold for sparsemax on max-shifted scores.
double SparsemaxTau(const std::vector<double>& z) {
  const std::vector<double> sorted = SortedDescending(z);
  double cumsum = 0.0;
  double support_sum = sorted[0];
  std::size_t support = 1;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    cumsum += sorted[k];
    if (1.0 + static_cast<double>(k + 1) * sorted[k] > cumsum) {
      support = k + 1;
      support_sum = cumsum;
    } else {
      break;
    }
  }
  return (support_sum - 1.0) / static_cast<double>(support);
}

// Threshold for 1.5-entmax on max-shifted scores, in score units.
// With x = s / 2, probs are (x - t)_+^2 and tau = 2t.
double Entmax15Tau(const std::vector<double>& z) {
  std::vector<double> x = SortedDescending(z);
  for (double& v : x) v *= 0.5;
  double cumsum = 0.0;
  double cumsum_sq = 0.0;
  double best = x[0] - 1.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    cumsum += x[k];
    cumsum_sq += x[k] * x[k];
    const double count = static_cast<double>(k + 1);
    const double mean = cumsum / count;
    const double mean_sq = cumsum_sq / count;
    const double spread = count * (mean_sq - mean * mean);
    const double delta = (1.0 - spread) / count;
    const double t = mean - std::sqrt(std::max(delta, 0.0));
    if (t <= x[k]) {
      best = t;
    } else {
      break;
    }
  }
  return 2.0 * best;
}

double ThresholdedValue(double score, double tau, double alpha) {
  const double base = (alpha - 1.0) * (score - tau);
  if (base <= 0.0) return 0.0;
  if (alpha == 2.0) return base;
  if (alpha == 1.5) return base * base;
  return std::pow(base, 1.0 / (alpha - 1.0));
}

// Bisection on max-shifted scores; the bracket follows from the top score
// alone reaching probability 1 and every score reaching at most 1/n.
double BisectTau(const std::vector<double>& z, double alpha) {
  const double n = static_cast<double>(z.size());
  double lo = -1.0 / (alpha - 1.0);
  double hi = -std::pow(1.0 / n, alpha - 1.0) / (alpha - 1.0);
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double total = 0.0;
    for (double v : z) total += ThresholdedValue(v, mid, alpha);
    if (total >= 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Alpha::Alpha(double value) : value_(value) {
  if (!std::isfinite(value) || value < 1.0) {
    throw InvalidArgumentError("alpha must be finite and >= 1, got " + std::to_string(value));
  }
}

SimplexVector Entmax(std::span<const double> scores, Alpha alpha) {
  const ShiftedScores s = Prepare(scores);
  SimplexVector out;
  out.probs.assign(scores.size(), 0.0);
  const double a = alpha.value();

  if (alpha.is_softmax()) {
    double total = 0.0;
    for (double v : s.value) total += std::exp(v);
    for (std::size_t k = 0; k < s.index.size(); ++k) {
      out.probs[s.index[k]] = std::exp(s.value[k]) / total;
    }
    out.tau = s.shift + std::log(total);
  } else {
    double tau;
    if (a == 2.0) {
      tau = SparsemaxTau(s.value);
    } else if (a == 1.5) {
      tau = Entmax15Tau(s.value);
    } else {
      tau = BisectTau(s.value, a);
    }
    for (std::size_t k = 0; k < s.index.size(); ++k) {
      double p = ThresholdedValue(s.value[k], tau, a);
      if (p < kProbabilityFloor) p = 0.0;
      out.probs[s.index[k]] = p;
    }
    if (a != 2.0 && a != 1.5) {
      double total = 0.0;
      for (double p : out.probs) total += p;
      for (double& p : out.probs) p /= total;
    }
    out.tau = s.shift + tau;
  }

  for (std::size_t j = 0; j < out.probs.size(); ++j) {
    if (out.probs[j] > 0.0) out.support.push_back(j);
  }
  return out;
}

std::vector<double> EntmaxJvp(const SimplexVector& out, Alpha alpha,
                              std::span<const double> upstream) {
  if (upstream.size() != out.probs.size()) {
    throw ShapeError("EntmaxJvp: upstream length " + std::to_string(upstream.size()) +
                     " != " + std::to_string(out.probs.size()));
  }
  const double exponent = 2.0 - alpha.value();
  std::vector<double> result(out.probs.size(), 0.0);
  double u_sum = 0.0;
  double u_dot = 0.0;
  for (std::size_t j : out.support) {
    const double u = exponent == 0.0 ? 1.0 : std::pow(out.probs[j], exponent);
    result[j] = u;
    u_sum += u;
    u_dot += u * upstream[j];
  }
  if (u_sum == 0.0) return result;
  const double mean = u_dot / u_sum;
  for (std::size_t j : out.support) result[j] *= upstream[j] - mean;
  return result;
}

std::vector<double> EntmaxJacobian(const SimplexVector& out, Alpha alpha) {
  const std::size_t n = out.probs.size();
  const double exponent = 2.0 - alpha.value();
  std::vector<double> u(n, 0.0);
  double u_sum = 0.0;
  for (std::size_t j : out.support) {
    u[j] = exponent == 0.0 ? 1.0 : std::pow(out.probs[j], exponent);
    u_sum += u[j];
  }
  std::vector<double> jac(n * n, 0.0);
  if (u_sum == 0.0) return jac;
  for (std::size_t i : out.support) {
    for (std::size_t j : out.support) jac[i * n + j] = -u[i] * u[j] / u_sum;
    jac[i * n + i] += u[i];
  }
  return jac;
}

double KktViolation(std::span<const double> scores, const SimplexVector& out, Alpha alpha) {
  if (scores.size() != out.probs.size()) {
    throw ShapeError("KktViolation: length mismatch");
  }
  double worst = 0.0;
  double total = 0.0;
  for (std::size_t j = 0; j < scores.size(); ++j) {
    const double p = out.probs[j];
    if (p < 0.0) worst = std::max(worst, -p);
    if (scores[j] == kMasked && p != 0.0) worst = std::max(worst, p);
    total += p;
  }
  worst = std::max(worst, std::abs(total - 1.0));

  std::vector<bool> in_support(scores.size(), false);
  for (std::size_t j : out.support) {
    in_support[j] = true;
    if (!(out.probs[j] > 0.0)) worst = std::max(worst, 1.0);
  }

  if (alpha.is_softmax()) {
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (scores[j] != kMasked && !in_support[j] && out.probs[j] == 0.0) {
        // Softmax only loses support through underflow.
        if (scores[j] - out.tau > -700.0) worst = std::max(worst, 1.0);
      }
    }
    return worst;
  }

  for (std::size_t j = 0; j < scores.size(); ++j) {
    if (scores[j] == kMasked) continue;
    if (in_support[j]) {
      worst = std::max(worst, std::max(0.0, out.tau - scores[j]));
    } else {
      const double would_be = ThresholdedValue(scores[j], out.tau, alpha.value());
      worst = std::max(worst, std::max(0.0, would_be - kProbabilityFloor));
    }
  }
  return worst;
}

}  // namespace sagl
