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

#include "sagl/svd.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sagl/errors.h"

namespace sagl {
namespace {

double ColumnDot(const Matrix& a, std::size_t p, std::size_t q) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) acc += a(i, p) * a(i, q);
  return acc;
}

void RotateColumns(Matrix& a, std::size_t p, std::size_t q, double c, double s) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double ap = a(i, p);
    const double aq = a(i, q);
    a(i, p) = c * ap - s * aq;
    a(i, q) = s * ap + c * aq;
  }
}

// Fills the columns of u flagged in `missing` with unit vectors orthogonal to
// every other column, by Gram-Schmidt over the standard basis.
void CompleteOrthonormal(Matrix& u, const std::vector<bool>& missing) {
  const std::size_t m = u.rows();
  std::size_t basis = 0;
  for (std::size_t col = 0; col < u.cols(); ++col) {
    if (!missing[col]) continue;
    for (; basis < m; ++basis) {
      std::vector<double> cand(m, 0.0);
      cand[basis] = 1.0;
      // Two passes of classical Gram-Schmidt for stability.
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t other = 0; other < u.cols(); ++other) {
          if (other == col || (missing[other] && other > col)) continue;
          double d = 0.0;
          for (std::size_t i = 0; i < m; ++i) d += cand[i] * u(i, other);
          for (std::size_t i = 0; i < m; ++i) cand[i] -= d * u(i, other);
        }
      }
      double norm = 0.0;
      for (double v : cand) norm += v * v;
      norm = std::sqrt(norm);
      if (norm > 1e-6) {
        for (std::size_t i = 0; i < m; ++i) u(i, col) = cand[i] / norm;
        ++basis;
        break;
      }
    }
  }
}

SvdResult TallSvd(const Matrix& a, const SvdOptions& options) {
  const std::size_t n = a.cols();
  Matrix w = a;
  Matrix v = Matrix::Identity(n);

  int sweep = 0;
  bool converged = n < 2;
  while (!converged) {
    if (sweep >= options.max_sweeps) {
      throw NumericalError("Svd: no convergence after " + std::to_string(sweep) +
                           " Jacobi sweeps");
    }
    ++sweep;
    double worst = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = ColumnDot(w, p, p);
        const double beta = ColumnDot(w, q, q);
        const double gamma = ColumnDot(w, p, q);
        if (gamma == 0.0 || alpha == 0.0 || beta == 0.0) continue;
        const double ratio = std::abs(gamma) / std::sqrt(alpha * beta);
        worst = std::max(worst, ratio);
        if (ratio <= options.tolerance) continue;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        RotateColumns(w, p, q, c, s);
        RotateColumns(v, p, q, c, s);
      }
    }
    converged = worst <= options.tolerance;
  }

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) norms[j] = std::sqrt(ColumnDot(w, j, j));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  const double largest = n == 0 ? 0.0 : norms[order[0]];
  const double negligible = largest * 1e-14;

  SvdResult out;
  out.sweeps = sweep;
  out.u = Matrix(a.rows(), n);
  out.v = Matrix(n, n);
  out.sigma.resize(n);
  std::vector<bool> missing(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    for (std::size_t i = 0; i < n; ++i) out.v(i, k) = v(i, j);
    if (norms[j] <= negligible || norms[j] == 0.0) {
      out.sigma[k] = 0.0;
      missing[k] = true;
      continue;
    }
    out.sigma[k] = norms[j];
    for (std::size_t i = 0; i < a.rows(); ++i) out.u(i, k) = w(i, j) / norms[j];
  }
  if (std::find(missing.begin(), missing.end(), true) != missing.end()) {
    CompleteOrthonormal(out.u, missing);
  }
  return out;
}

}  // namespace

SvdResult Svd(const Matrix& m, const SvdOptions& options) {
  if (!m.AllFinite()) throw NumericalError("Svd: input has non-finite entries");
  if (m.rows() >= m.cols()) return TallSvd(m, options);
  SvdResult t = TallSvd(Transpose(m), options);
  std::swap(t.u, t.v);
  return t;
}

Matrix Reconstruct(const SvdResult& svd) {
  Matrix scaled = svd.u;
  for (std::size_t i = 0; i < scaled.rows(); ++i)
    for (std::size_t k = 0; k < scaled.cols(); ++k) scaled(i, k) *= svd.sigma[k];
  return MatMulNT(scaled, svd.v);
}

}  // namespace sagl
