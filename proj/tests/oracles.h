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

// Slow, independent reference implementations used by the tests.

#ifndef SAGL_TESTS_ORACLES_H_
#define SAGL_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "sagl/matrix.h"

namespace sagl::oracle {

inline Matrix TripleLoopMatMul(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  return out;
}

// Sparsemax by sorting: tau = (sum of top k - 1) / k for the largest valid k.
inline std::vector<double> Sparsemax(const std::vector<double>& s) {
  std::vector<double> sorted = s;
  std::sort(sorted.rbegin(), sorted.rend());
  double cum = 0.0;
  double tau = 0.0;
  for (std::size_t k = 1; k <= sorted.size(); ++k) {
    cum += sorted[k - 1];
    const double t = (cum - 1.0) / static_cast<double>(k);
    if (sorted[k - 1] > t) tau = t;
  }
  std::vector<double> p(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) p[j] = std::max(0.0, s[j] - tau);
  return p;
}

inline std::vector<double> Softmax(const std::vector<double>& s) {
  const double top = *std::max_element(s.begin(), s.end());
  std::vector<double> p(s.size());
  double z = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) z += p[j] = std::exp(s[j] - top);
  for (double& v : p) v /= z;
  return p;
}

// Maximum matched fraction over every injective cluster-to-class map.
inline double BruteForceAccuracy(const std::vector<std::size_t>& pred,
                                 const std::vector<std::size_t>& truth) {
  const std::size_t kp = *std::max_element(pred.begin(), pred.end()) + 1;
  const std::size_t kt = *std::max_element(truth.begin(), truth.end()) + 1;
  const std::size_t k = std::max(kp, kt);
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t best = 0;
  do {
    std::size_t hit = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) hit += perm[pred[i]] == truth[i];
    best = std::max(best, hit);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(pred.size());
}

// Adjusted Rand index by enumerating all sample pairs.
inline double PairCountingAri(const std::vector<std::size_t>& a,
                              const std::vector<std::size_t>& b) {
  const std::size_t n = a.size();
  double both = 0, only_a = 0, only_b = 0, pairs = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool sa = a[i] == a[j];
      const bool sb = b[i] == b[j];
      both += sa && sb;
      only_a += sa;
      only_b += sb;
      pairs += 1;
    }
  const double expected = only_a * only_b / pairs;
  const double max_index = 0.5 * (only_a + only_b);
  if (max_index == expected) return 1.0;
  return (both - expected) / (max_index - expected);
}

inline double Entropy(const std::vector<std::size_t>& x) {
  std::map<std::size_t, double> counts;
  for (std::size_t v : x) counts[v] += 1.0;
  double h = 0.0;
  for (const auto& [k, c] : counts) {
    const double p = c / static_cast<double>(x.size());
    h -= p * std::log(p);
  }
  return h;
}

inline double SqrtNmi(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  const double n = static_cast<double>(a.size());
  std::map<std::pair<std::size_t, std::size_t>, double> joint;
  std::map<std::size_t, double> pa, pb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    joint[{a[i], b[i]}] += 1.0;
    pa[a[i]] += 1.0;
    pb[b[i]] += 1.0;
  }
  double mi = 0.0;
  for (const auto& [key, c] : joint) {
    mi += c / n * std::log(c * n / (pa[key.first] * pb[key.second]));
  }
  const double ha = Entropy(a);
  const double hb = Entropy(b);
  if (ha == 0.0 && hb == 0.0) return 1.0;
  if (ha == 0.0 || hb == 0.0) return 0.0;
  return mi / std::sqrt(ha * hb);
}

}  // namespace sagl::oracle

#endif  // SAGL_TESTS_ORACLES_H_
