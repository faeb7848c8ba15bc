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

#ifndef SAGL_HUNGARIAN_H_
#define SAGL_HUNGARIAN_H_

#include <cstddef>
#include <vector>

#include "sagl/matrix.h"

namespace sagl {

// Minimum-cost perfect matching on a square cost matrix (Kuhn-Munkres with
// potentials, O(n^3)). Returns assignment[row] = column.
std::vector<std::size_t> SolveAssignment(const Matrix& cost);

}  // namespace sagl

#endif  // SAGL_HUNGARIAN_H_
