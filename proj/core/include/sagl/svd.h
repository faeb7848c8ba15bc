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

#ifndef SAGL_SVD_H_
#define SAGL_SVD_H_

#include <vector>

#include "sagl/matrix.h"

namespace sagl {

struct SvdResult {
  Matrix u;                    // m x k, orthonormal columns
  std::vector<double> sigma;   // k values, descending, nonnegative
  Matrix v;                    // n x k, orthonormal columns
  int sweeps = 0;              // Jacobi sweeps used
};

struct SvdOptions {
  // Convergence when every column pair has |<a_p, a_q>| <= tol * |a_p| |a_q|.
  double tolerance = 1e-12;
  int max_sweeps = 100;
};

// Thin SVD, k = min(m, n), by one-sided (Hestenes) Jacobi rotations.
// m = u * diag(sigma) * v^T. Columns of u belonging to zero singular values
// are completed to an orthonormal set. Throws NumericalError on a non-finite
// input or when max_sweeps is exhausted.
SvdResult Svd(const Matrix& m, const SvdOptions& options = {});

// u * diag(sigma) * v^T.
Matrix Reconstruct(const SvdResult& svd);

}  // namespace sagl

#endif  // SAGL_SVD_H_
