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

#ifndef SAGL_ENTMAX_H_
#define SAGL_ENTMAX_H_

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace sagl {

// Score value that removes an entry from a projection.
inline constexpr double kMasked = -std::numeric_limits<double>::infinity();

// Probabilities below this value are snapped to exact zero.
inline constexpr double kProbabilityFloor = 1e-15;

// Entmax order. 1 selects softmax, 2 sparsemax; anything above 1 is sparse.
class Alpha {
 public:
  // Throws InvalidArgumentError unless value >= 1 and finite.
  explicit Alpha(double value);
  double value() const { return value_; }
  bool is_softmax() const { return value_ == 1.0; }

 private:
  double value_;
};

// Output of a projection onto the probability simplex.
struct SimplexVector {
  std::vector<double> probs;
  // Ascending indices j with probs[j] > 0.
  std::vector<std::size_t> support;
  // probs[j] = [(alpha - 1)(s_j - tau)]_+^(1/(alpha-1)) for alpha > 1;
  // the log-partition for softmax.
  double tau = 0.0;
};

// alpha-entmax of `scores`. Entries equal to kMasked get probability 0.
// Exact sort-based thresholds for alpha in {1.5, 2}; bisection otherwise.
// Throws InvalidArgumentError when every entry is masked or a score is NaN/+inf.
SimplexVector Entmax(std::span<const double> scores, Alpha alpha);

// J^T * upstream with J = diag(u) - u u^T / sum(u), u_j = p_j^(2 - alpha) on
// the support. J is symmetric, so this is also J * upstream.
std::vector<double> EntmaxJvp(const SimplexVector& out, Alpha alpha,
                              std::span<const double> upstream);

// Dense n x n Jacobian d probs / d scores, row-major.
std::vector<double> EntmaxJacobian(const SimplexVector& out, Alpha alpha);

// Independent reference solver: bisection on
// g(tau) = sum_j [(alpha-1)(s_j - tau)]_+^(1/(alpha-1)) - 1 down to |g| <= 1e-12.
// Shares no code with Entmax. Throws NumericalError if the bracket fails.
SimplexVector EntmaxOracle(std::span<const double> scores, Alpha alpha);

// Largest violation of the projection's optimality conditions: negative or
// non-normalized probabilities, support entries at or below tau, and
// off-support entries whose thresholded value exceeds the floor. Zero means
// the output is an exact KKT point. Softmax outputs are checked for full
// support over the unmasked entries instead.
double KktViolation(std::span<const double> scores, const SimplexVector& out, Alpha alpha);

}  // namespace sagl

#endif  // SAGL_ENTMAX_H_
