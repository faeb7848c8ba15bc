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

#include "sagl/theorem_checks.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sagl/entmax.h"
#include "sagl/graph_model.h"
#include "sagl/metrics.h"
#include "sagl/rng.h"
#include "sagl/synthetic.h"

namespace sagl {
namespace {

std::vector<double> RandomScores(Rng& rng, std::size_t n, double scale) {
  std::vector<double> s(n);
  for (double& v : s) v = scale * rng.Normal();
  return s;
}

CheckResult Finish(std::string name, double residual, double threshold, std::string detail) {
  CheckResult r;
  r.name = std::move(name);
  r.residual = residual;
  r.threshold = threshold;
  r.passed = residual <= threshold;
  r.detail = std::move(detail);
  return r;
}

}  // namespace

CheckResult CheckEntmaxOracle(std::uint64_t seed, int count) {
  const std::size_t sizes[] = {4, 16, 64};
  const double alphas[] = {1.2, 1.5, 2.0};
  Rng rng = Rng(seed).Split(11);
  double worst_diff = 0.0;
  double worst_kkt = 0.0;
  for (int t = 0; t < count; ++t) {
    const std::size_t n = sizes[t % 3];
    const Alpha alpha(alphas[(t / 3) % 3]);
    const std::vector<double> s = RandomScores(rng, n, 1.0 + 2.0 * rng.Uniform());
    const SimplexVector fast = Entmax(s, alpha);
    const SimplexVector ref = EntmaxOracle(s, alpha);
    for (std::size_t j = 0; j < n; ++j) {
      worst_diff = std::max(worst_diff, std::abs(fast.probs[j] - ref.probs[j]));
    }
    worst_kkt = std::max(worst_kkt, KktViolation(s, fast, alpha));
  }
  std::ostringstream os;
  os << count << " vectors, max |fast - oracle| = " << worst_diff
     << ", max KKT violation = " << worst_kkt;
  return Finish("entmax_oracle", std::max(worst_diff, worst_kkt), 1e-9, os.str());
}

CheckResult CheckBilinearRecovery(std::uint64_t seed, int pairs) {
  constexpr std::size_t kN = 8;
  constexpr std::size_t kC = 3;
  Rng rng = Rng(seed).Split(12);
  double worst = 0.0;
  double min_asym = INFINITY;
  for (int t = 0; t < pairs; ++t) {
    const Matrix z = RandNormal(rng, kN, kC, 1.0);
    const Matrix w_star = RandNormal(rng, kC, kC, 1.0);
    const BilinearFactor f = FactorFromStructure(w_star);
    const Matrix target = MatMulNT(MatMul(z, w_star), z);
    const Matrix built = BilinearSimilarity(z, f);
    worst = std::max(worst, RelativeFrobeniusError(built, target));
    min_asym = std::min(min_asym, MaxAbsDiff(built, Transpose(built)));
  }
  std::ostringstream os;
  os << pairs << " pairs (n=8, c=3), max relative residual = " << worst
     << ", min max|S - S^T| = " << min_asym;
  return Finish("bilinear_recovery", worst, 1e-8, os.str());
}

CheckResult CheckBlockDiagonal(std::uint64_t seed) {
  SyntheticSpec spec;
  spec.subspaces = 4;
  spec.subspace_dim = 3;
  spec.ambient_dim = 24;
  spec.per_class = 50;
  spec.noise_sigma = 0.0;
  spec.views = 1;
  spec.seed = seed;
  const SyntheticData data = GenerateSynthetic(spec);
  const Matrix& x = data.latent;
  const std::size_t n = x.rows();

  Matrix cosine = MatMulNT(x, x);
  std::vector<double> norms(n);
  for (std::size_t i = 0; i < n; ++i) norms[i] = std::sqrt(cosine(i, i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cosine(i, j) /= norms[i] * norms[j];

  const SparseAttentionGraph graph = ProjectRows(cosine, Alpha(1.5));
  const auto& y = data.labels.labels;
  const double mass = IntraBlockMass(graph, y);
  double off_block = 0.0;
  double min_margin = INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    double max_cross = -INFINITY;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[i] != y[j]) {
        off_block = std::max(off_block, graph.rows[i].probs[j]);
        max_cross = std::max(max_cross, cosine(i, j));
      }
    }
    min_margin = std::min(min_margin, graph.rows[i].tau - max_cross);
  }
  std::ostringstream os;
  os << "n=" << n << ", intra_block_mass = " << mass << ", max off-block entry = " << off_block
     << ", min(tau - max cross score) = " << min_margin
     << ", sparsity ratio = " << SparsityRatio(graph);
  // Exactness: the mass must be 1 and every off-block entry exactly 0.
  const double residual = (1.0 - mass) + off_block;
  return Finish("block_diagonal", residual, 0.0, os.str());
}

CheckResult CheckSupportSparsity(std::uint64_t seed, int count) {
  Rng rng = Rng(seed).Split(14);
  const double alphas[] = {1.5, 2.0, 1.3};
  double worst_support = 0.0;
  double worst_fd = 0.0;
  double worst_sym = 0.0;
  double worst_kkt = 0.0;
  constexpr double kStep = 1e-6;
  for (int t = 0; t < count; ++t) {
    const std::size_t n = 3 + rng.UniformIndex(14);
    const Alpha alpha(alphas[t % 3]);
    const std::vector<double> s = RandomScores(rng, n, 1.0 + 2.0 * rng.Uniform());
    const SimplexVector out = Entmax(s, alpha);
    worst_kkt = std::max(worst_kkt, KktViolation(s, out, alpha));

    std::size_t above = 0;
    for (double v : s) {
      const double base = (alpha.value() - 1.0) * (v - out.tau);
      if (base > 0.0 && std::pow(base, 1.0 / (alpha.value() - 1.0)) >= kProbabilityFloor) ++above;
    }
    worst_support = std::max(worst_support,
                             std::abs(static_cast<double>(above) -
                                      static_cast<double>(out.support.size())));

    const std::vector<double> jac = EntmaxJacobian(out, alpha);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        worst_sym = std::max(worst_sym, std::abs(jac[i * n + j] - jac[j * n + i]));

    // Skip draws whose support would change inside the difference stencil.
    bool near_kink = false;
    for (double v : s) {
      if (std::abs(v - out.tau) < 1e-3) near_kink = true;
    }
    if (near_kink) continue;
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<double> up = s, down = s;
      up[k] += kStep;
      down[k] -= kStep;
      const SimplexVector pu = Entmax(up, alpha);
      const SimplexVector pd = Entmax(down, alpha);
      for (std::size_t i = 0; i < n; ++i) {
        const double fd = (pu.probs[i] - pd.probs[i]) / (2.0 * kStep);
        worst_fd = std::max(worst_fd, std::abs(fd - jac[i * n + k]));
      }
    }
  }
  std::ostringstream os;
  os << count << " vectors: support-count mismatch = " << worst_support
     << ", KKT = " << worst_kkt << ", |J - FD| = " << worst_fd << ", |J - J^T| = " << worst_sym;
  // Combined residual against the tightest tolerance (finite differences).
  const double residual = std::max({worst_support, worst_kkt * 1e4, worst_fd, worst_sym});
  return Finish("support_sparsity", residual, 1e-5, os.str());
}

CheckResult CheckGateSupport(std::uint64_t seed, int count) {
  Rng rng = Rng(seed).Split(15);
  const Alpha alpha(1.5);
  SparsityGate divisive;
  divisive.mode = GateMode::kDivisive;
  std::size_t div_violations = 0;
  std::size_t mult_violations = 0;
  std::size_t mult_grew = 0;
  std::size_t div_shrank = 0;
  for (int t = 0; t < count; ++t) {
    const std::size_t n = 4 + rng.UniformIndex(30);
    std::vector<double> s(n);
    for (double& v : s) v = 3.0 * rng.Uniform() + 1e-3;
    double lo = rng.Uniform();
    double hi = rng.Uniform();
    if (lo > hi) std::swap(lo, hi);

    auto support = [&](double scale) {
      std::vector<double> scaled = s;
      for (double& v : scaled) v *= scale;
      return Entmax(scaled, alpha).support.size();
    };
    // Product form: scores scaled by (1 - omega).
    const std::size_t mult_lo = support(1.0 - lo);
    const std::size_t mult_hi = support(1.0 - hi);
    if (mult_hi < mult_lo) ++mult_violations;
    if (mult_hi > mult_lo) ++mult_grew;
    // Quotient form: scores scaled by 1 / (1 - omega + eps).
    const std::size_t div_lo = support(1.0 / (1.0 - lo + divisive.epsilon));
    const std::size_t div_hi = support(1.0 / (1.0 - hi + divisive.epsilon));
    if (div_hi > div_lo) ++div_violations;
    if (div_hi < div_lo) ++div_shrank;
  }
  std::ostringstream os;
  os << count << " positive rows, larger omega: quotient gate shrank the support in "
     << div_shrank << " draws and grew it in " << div_violations
     << "; product gate grew it in " << mult_grew << " draws and shrank it in "
     << mult_violations;
  return Finish("gate_support", static_cast<double>(div_violations + mult_violations), 0.0,
                os.str());
}

std::vector<CheckResult> RunTheoremChecks(std::uint64_t seed) {
  return {CheckEntmaxOracle(seed), CheckBilinearRecovery(seed), CheckBlockDiagonal(seed),
          CheckSupportSparsity(seed), CheckGateSupport(seed)};
}

}  // namespace sagl
