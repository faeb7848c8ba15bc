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

#ifndef SAGL_THEOREM_CHECKS_H_
#define SAGL_THEOREM_CHECKS_H_

// Self-contained numerical checks of the structural guarantees behind the
// model, each on seeded instances:
//
//   entmax_oracle       fast projection vs bisection reference, plus KKT
//   bilinear_recovery   SVD-built U, V reproduce Z W* Z^T exactly
//   block_diagonal      separated subspaces give graphs with zero off-block mass
//   support_sparsity    support is exactly {j : s_j > tau}; Jacobian matches
//                       finite differences and is symmetric
//   gate_support        how the gate scale moves the support size

#include <cstdint>
#include <string>
#include <vector>

namespace sagl {

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;   // measured quantity
  double threshold = 0.0;  // pass bound on the residual
  std::string detail;
};

CheckResult CheckEntmaxOracle(std::uint64_t seed, int count = 1000);
CheckResult CheckBilinearRecovery(std::uint64_t seed, int pairs = 20);
CheckResult CheckBlockDiagonal(std::uint64_t seed);
CheckResult CheckSupportSparsity(std::uint64_t seed, int count = 200);
CheckResult CheckGateSupport(std::uint64_t seed, int count = 1000);

std::vector<CheckResult> RunTheoremChecks(std::uint64_t seed);

}  // namespace sagl

#endif  // SAGL_THEOREM_CHECKS_H_
