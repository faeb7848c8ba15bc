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

// Reference projection used to validate Entmax. Deliberately naive: a plain
// bisection on the normalization residual with a loose bracket, evaluated in
// the caller's original score units.

#include <cmath>
#include <string>

#include "sagl/entmax.h"
#include "sagl/errors.h"

namespace sagl {
namespace {

constexpr double kResidualTolerance = 1e-12;
constexpr int kMaxIterations = 5000;

double Residual(std::span<const double> scores, double tau, double alpha) {
  double sum = 0.0;
  for (double s : scores) {
    if (s == kMasked) continue;
    const double base = (alpha - 1.0) * (s - tau);
    if (base > 0.0) sum += std::pow(base, 1.0 / (alpha - 1.0));
  }
  return sum - 1.0;
}

}  // namespace

SimplexVector EntmaxOracle(std::span<const double> scores, Alpha alpha) {
  double top = kMasked;
  bool any = false;
  for (std::size_t j = 0; j < scores.size(); ++j) {
    const double s = scores[j];
    if (s == kMasked) continue;
    if (!std::isfinite(s)) {
      throw InvalidArgumentError("EntmaxOracle: score " + std::to_string(j) + " is not finite");
    }
    any = true;
    if (s > top) top = s;
  }
  if (!any) throw InvalidArgumentError("EntmaxOracle: every entry is masked");

  SimplexVector out;
  out.probs.assign(scores.size(), 0.0);

  if (alpha.is_softmax()) {
    long double z = 0.0L;
    for (double s : scores) {
      if (s != kMasked) z += std::exp(static_cast<long double>(s - top));
    }
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (scores[j] == kMasked) continue;
      out.probs[j] = static_cast<double>(std::exp(static_cast<long double>(scores[j] - top)) / z);
      if (out.probs[j] > 0.0) out.support.push_back(j);
    }
    out.tau = top + static_cast<double>(std::log(z));
    return out;
  }

  const double a = alpha.value();
  // Widened by one unit so rounding at the top entry cannot break the bracket.
  double lo = top - 1.0 / (a - 1.0) - 1.0;
  double hi = top;
  double g_lo = Residual(scores, lo, a);
  double g_hi = Residual(scores, hi, a);
  if (!(g_lo >= 0.0) || !(g_hi < 0.0)) {
    throw NumericalError("EntmaxOracle: bracket failure, g(lo)=" + std::to_string(g_lo) +
                         " g(hi)=" + std::to_string(g_hi));
  }
  double tau = lo;
  double g = g_lo;
  int iter = 0;
  while (std::abs(g) > kResidualTolerance) {
    if (++iter > kMaxIterations) {
      throw NumericalError("EntmaxOracle: bisection did not reach tolerance, |g|=" +
                           std::to_string(std::abs(g)));
    }
    const double mid = lo + 0.5 * (hi - lo);
    if (mid == lo || mid == hi) {
      throw NumericalError("EntmaxOracle: bracket collapsed with |g|=" +
                           std::to_string(std::abs(g)));
    }
    tau = mid;
    g = Residual(scores, mid, a);
    if (g >= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  out.tau = tau;
  for (std::size_t j = 0; j < scores.size(); ++j) {
    if (scores[j] == kMasked) continue;
    const double base = (a - 1.0) * (scores[j] - tau);
    if (base <= 0.0) continue;
    const double p = std::pow(base, 1.0 / (a - 1.0));
    if (p < kProbabilityFloor) continue;
    out.probs[j] = p;
    out.support.push_back(j);
  }
  return out;
}

}  // namespace sagl
