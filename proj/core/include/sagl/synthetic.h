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

#ifndef SAGL_SYNTHETIC_H_
#define SAGL_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sagl/io.h"
#include "sagl/matrix.h"

namespace sagl {

// Union-of-subspaces generator.
//
// K subspaces of dimension d_sub are spanned by orthonormal bases in R^D, so
// they are mutually orthogonal unless min_principal_angle_deg < 90. Each sample
// is B_k c with c a unit vector drawn from the nonnegative orthant of R^d_sub,
// plus N(0, noise_sigma^2) noise. View l applies its own random full-rank map
// M_l with N(0, 1) entries and adds independent noise of the same scale:
// h = M_l x + e_l.
struct SyntheticSpec {
  std::size_t subspaces = 4;       // K
  std::size_t subspace_dim = 3;    // d_sub
  std::size_t ambient_dim = 24;    // D
  std::size_t per_class = 100;     // training samples per subspace
  std::size_t test_per_class = 0;  // held-out samples per subspace
  double noise_sigma = 0.01;
  std::size_t views = 2;           // L
  std::uint64_t seed = 0;
  // Smallest principal angle between two subspaces, in degrees. Values below
  // 90 tilt every basis toward a shared direction block and need
  // (K + 1) * d_sub <= D.
  double min_principal_angle_deg = 90.0;
};

struct SyntheticData {
  Matrix latent;                   // n x D samples before the view maps
  std::vector<Matrix> views;       // per view, n x D
  LabelVector labels;
  std::vector<Matrix> test_views;  // empty when test_per_class == 0
  LabelVector test_labels;
  std::vector<Matrix> bases;       // per subspace, D x d_sub, orthonormal columns
  std::vector<Matrix> view_maps;   // per view, D x D
};

// Throws InvalidArgumentError when the spec is inconsistent.
void ValidateSpec(const SyntheticSpec& spec);

SyntheticData GenerateSynthetic(const SyntheticSpec& spec);

}  // namespace sagl

#endif  // SAGL_SYNTHETIC_H_
