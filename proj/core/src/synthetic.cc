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

#include "sagl/synthetic.h"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "sagl/errors.h"
#include "sagl/rng.h"
#include "sagl/svd.h"

namespace sagl {
namespace {

constexpr std::uint64_t kBasisStream = 1;
constexpr std::uint64_t kMapStream = 2;
constexpr std::uint64_t kTrainStream = 3;
constexpr std::uint64_t kTestStream = 4;

constexpr double kMinMapConditioning = 1e-3;

// D x D matrix with orthonormal columns.
Matrix RandomOrthonormal(Rng& rng, std::size_t dim) {
  return Svd(RandNormal(rng, dim, dim, 1.0)).u;
}

// Standard Gaussian entries, redrawn until reasonably conditioned.
Matrix RandomFullRankMap(Rng& rng, std::size_t dim) {
  for (;;) {
    Matrix m = RandNormal(rng, dim, dim, 1.0);
    const SvdResult svd = Svd(m);
    if (svd.sigma.back() > kMinMapConditioning * svd.sigma.front()) return m;
  }
}

struct Split {
  Matrix latent;
  std::vector<Matrix> views;
  LabelVector labels;
};

Split Sample(const SyntheticSpec& spec, const std::vector<Matrix>& bases,
             const std::vector<Matrix>& maps, std::size_t per_class, Rng rng) {
  const std::size_t k_sub = spec.subspaces;
  const std::size_t d = spec.subspace_dim;
  const std::size_t dim = spec.ambient_dim;
  const std::size_t n = k_sub * per_class;

  Matrix x(n, dim);
  std::vector<std::size_t> labels(n);
  Rng coeff_rng = rng.Split(0);
  for (std::size_t k = 0; k < k_sub; ++k) {
    for (std::size_t s = 0; s < per_class; ++s) {
      const std::size_t i = k * per_class + s;
      labels[i] = k;
      std::vector<double> c(d);
      double norm = 0.0;
      while (norm == 0.0) {
        norm = 0.0;
        for (double& v : c) {
          v = std::abs(coeff_rng.Normal());
          norm += v * v;
        }
        norm = std::sqrt(norm);
      }
      for (std::size_t r = 0; r < dim; ++r) {
        double acc = 0.0;
        for (std::size_t q = 0; q < d; ++q) acc += bases[k](r, q) * c[q] / norm;
        x(i, r) = acc;
      }
    }
  }
  Rng noise_rng = rng.Split(1);
  Axpy(1.0, RandNormal(noise_rng, n, dim, spec.noise_sigma), x);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng shuffle_rng = rng.Split(2);
  shuffle_rng.Shuffle(order);

  Split out;
  out.labels.num_classes = k_sub;
  out.labels.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.labels.labels[i] = labels[order[i]];
  out.latent = GatherRows(x, order);
  const Matrix& shuffled = out.latent;
  for (std::size_t l = 0; l < maps.size(); ++l) {
    Rng view_noise = rng.Split(100 + l);
    Matrix h = MatMulNT(shuffled, maps[l]);
    Axpy(1.0, RandNormal(view_noise, n, dim, spec.noise_sigma), h);
    out.views.push_back(std::move(h));
  }
  return out;
}

}  // namespace

void ValidateSpec(const SyntheticSpec& spec) {
  if (spec.subspaces == 0) throw InvalidArgumentError("synthetic: subspaces must be >= 1");
  if (spec.subspace_dim == 0) throw InvalidArgumentError("synthetic: subspace_dim must be >= 1");
  if (spec.views == 0) throw InvalidArgumentError("synthetic: views must be >= 1");
  if (spec.subspace_dim > spec.ambient_dim) {
    throw InvalidArgumentError("synthetic: subspace_dim exceeds ambient_dim");
  }
  if (spec.per_class < spec.subspace_dim) {
    throw InvalidArgumentError("synthetic: per_class (" + std::to_string(spec.per_class) +
                               ") must be >= subspace_dim (" +
                               std::to_string(spec.subspace_dim) + ")");
  }
  if (spec.test_per_class != 0 && spec.test_per_class < spec.subspace_dim) {
    throw InvalidArgumentError("synthetic: test_per_class must be 0 or >= subspace_dim");
  }
  if (spec.subspaces * spec.subspace_dim > spec.ambient_dim) {
    throw InvalidArgumentError("synthetic: subspaces * subspace_dim (" +
                               std::to_string(spec.subspaces * spec.subspace_dim) +
                               ") exceeds ambient_dim (" + std::to_string(spec.ambient_dim) +
                               "); subspaces cannot be independent");
  }
  if (!(spec.noise_sigma >= 0.0)) throw InvalidArgumentError("synthetic: noise_sigma must be >= 0");
  if (!(spec.min_principal_angle_deg > 0.0 && spec.min_principal_angle_deg <= 90.0)) {
    throw InvalidArgumentError("synthetic: min_principal_angle_deg must be in (0, 90]");
  }
  if (spec.min_principal_angle_deg < 90.0 &&
      (spec.subspaces + 1) * spec.subspace_dim > spec.ambient_dim) {
    throw InvalidArgumentError(
        "synthetic: tilted subspaces need (subspaces + 1) * subspace_dim <= ambient_dim");
  }
}

SyntheticData GenerateSynthetic(const SyntheticSpec& spec) {
  ValidateSpec(spec);
  const Rng root(spec.seed);
  const std::size_t d = spec.subspace_dim;
  const std::size_t dim = spec.ambient_dim;

  SyntheticData out;
  Rng basis_rng = root.Split(kBasisStream);
  const Matrix ortho = RandomOrthonormal(basis_rng, dim);
  // b = sin(t) o_k + cos(t) o_shared gives principal angles arccos(cos^2 t).
  const double cos_angle = std::cos(spec.min_principal_angle_deg * std::numbers::pi / 180.0);
  const double shared = spec.min_principal_angle_deg < 90.0 ? std::sqrt(cos_angle) : 0.0;
  const double own = std::sqrt(1.0 - shared * shared);
  const std::size_t shared_offset = spec.subspaces * d;
  for (std::size_t k = 0; k < spec.subspaces; ++k) {
    Matrix b(dim, d);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t q = 0; q < d; ++q) {
        b(r, q) = own * ortho(r, k * d + q);
        if (shared != 0.0) b(r, q) += shared * ortho(r, shared_offset + q);
      }
    }
    out.bases.push_back(std::move(b));
  }

  Rng map_rng = root.Split(kMapStream);
  for (std::size_t l = 0; l < spec.views; ++l) out.view_maps.push_back(RandomFullRankMap(map_rng, dim));

  Split train = Sample(spec, out.bases, out.view_maps, spec.per_class, root.Split(kTrainStream));
  out.latent = std::move(train.latent);
  out.views = std::move(train.views);
  out.labels = std::move(train.labels);
  if (spec.test_per_class > 0) {
    Split test = Sample(spec, out.bases, out.view_maps, spec.test_per_class, root.Split(kTestStream));
    out.test_views = std::move(test.views);
    out.test_labels = std::move(test.labels);
  }
  return out;
}

}  // namespace sagl
