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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "oracles.h"
#include "sagl/entmax.h"
#include "sagl/errors.h"
#include "sagl/rng.h"

namespace sagl {
namespace {

std::vector<double> Draw(Rng& rng, std::size_t n, double scale) {
  std::vector<double> s(n);
  for (double& v : s) v = scale * rng.Normal();
  return s;
}

double MaxDiff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double Sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

TEST_SUITE("simplex_projection") {

TEST_CASE("alpha below one is rejected") {
  CHECK_THROWS_AS(Alpha(0.5), InvalidArgumentError);
  CHECK_THROWS_AS(Alpha(std::nan("")), InvalidArgumentError);
  CHECK(Alpha(1.0).is_softmax());
}

TEST_CASE("equal scores give the uniform distribution") {
  const std::vector<double> s{0, 0, 0};
  for (double a : {1.0, 1.2, 1.5, 2.0}) {
    const SimplexVector out = Entmax(s, Alpha(a));
    for (double p : out.probs) CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(Sum(out.probs) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(out.support.size() == 3);
  }
  const SimplexVector ref = EntmaxOracle(s, Alpha(1.5));
  for (double p : ref.probs) CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("single dominant score saturates with tau 8") {
  const SimplexVector out = Entmax(std::vector<double>{10, 0, 0}, Alpha(1.5));
  CHECK(out.probs == std::vector<double>{1.0, 0.0, 0.0});
  CHECK(out.tau == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(out.support == std::vector<std::size_t>{0});
  const SimplexVector ref = EntmaxOracle(std::vector<double>{10, 0, 0}, Alpha(1.5));
  CHECK(ref.tau == doctest::Approx(8.0).epsilon(1e-9));
}

TEST_CASE("sparsemax hand case") {
  const std::vector<double> s{0.5, 0.2, 0.1};
  const SimplexVector out = Entmax(s, Alpha(2.0));
  CHECK(out.probs[0] == doctest::Approx(0.5 + 0.2 / 3.0).epsilon(1e-12));
  CHECK(out.probs[1] == doctest::Approx(0.2 + 0.2 / 3.0).epsilon(1e-12));
  CHECK(out.probs[2] == doctest::Approx(0.1 + 0.2 / 3.0).epsilon(1e-12));
  CHECK(out.tau == doctest::Approx(-0.2 / 3.0).epsilon(1e-12));
  CHECK(MaxDiff(out.probs, oracle::Sparsemax(s)) <= 1e-12);
}

TEST_CASE("sparsemax matches the sort oracle on random vectors") {
  Rng rng(21);
  for (int t = 0; t < 300; ++t) {
    const std::vector<double> s = Draw(rng, 2 + rng.UniformIndex(30), 1.5);
    CHECK(MaxDiff(Entmax(s, Alpha(2.0)).probs, oracle::Sparsemax(s)) <= 1e-12);
  }
}

TEST_CASE("alpha one is softmax") {
  Rng rng(22);
  for (int t = 0; t < 100; ++t) {
    const std::vector<double> s = Draw(rng, 1 + rng.UniformIndex(20), 4.0);
    CHECK(MaxDiff(Entmax(s, Alpha(1.0)).probs, oracle::Softmax(s)) <= 1e-12);
  }
}

TEST_CASE("masked entries get exact zeros") {
  const std::vector<double> s{1.0, kMasked, 0.9, kMasked};
  for (double a : {1.0, 1.5, 1.7, 2.0}) {
    const SimplexVector out = Entmax(s, Alpha(a));
    CHECK(out.probs[1] == 0.0);
    CHECK(out.probs[3] == 0.0);
    CHECK(Sum(out.probs) == doctest::Approx(1.0).epsilon(1e-12));
  }
  const std::vector<double> all{kMasked, kMasked};
  CHECK_THROWS_AS(Entmax(all, Alpha(1.5)), InvalidArgumentError);
  CHECK_THROWS_AS(Entmax(std::vector<double>{}, Alpha(1.5)), InvalidArgumentError);
  CHECK_THROWS_AS(Entmax(std::vector<double>{1.0, std::nan("")}, Alpha(1.5)),
                  InvalidArgumentError);
}

TEST_CASE("fast path agrees with the bisection oracle") {
  Rng rng(23);
  const std::size_t sizes[] = {4, 16, 64};
  const double alphas[] = {1.2, 1.5, 2.0, 1.7, 3.0};
  for (int t = 0; t < 1000; ++t) {
    const std::vector<double> s = Draw(rng, sizes[t % 3], 2.0);
    const Alpha a(alphas[t % 5]);
    const SimplexVector out = Entmax(s, a);
    CHECK(MaxDiff(out.probs, EntmaxOracle(s, a).probs) <= 1e-9);
    CHECK(KktViolation(s, out, a) <= 1e-9);
  }
}

TEST_CASE("simplex vector invariants") {
  Rng rng(24);
  for (int t = 0; t < 500; ++t) {
    const std::vector<double> s = Draw(rng, 2 + rng.UniformIndex(40), 3.0);
    const double av = 1.0 + 0.1 * static_cast<double>(1 + rng.UniformIndex(15));
    const SimplexVector out = Entmax(s, Alpha(av));
    CHECK(Sum(out.probs) == doctest::Approx(1.0).epsilon(1e-9));
    std::vector<std::size_t> positive;
    for (std::size_t j = 0; j < s.size(); ++j) {
      CHECK(out.probs[j] >= 0.0);
      if (out.probs[j] > 0.0) positive.push_back(j);
    }
    CHECK(positive == out.support);
    // Support strictly above tau; off-support thresholded values below the floor.
    for (std::size_t j = 0; j < s.size(); ++j) {
      const double base = (av - 1.0) * (s[j] - out.tau);
      if (out.probs[j] > 0.0) {
        CHECK(s[j] > out.tau);
      } else {
        CHECK((base <= 0.0 || std::pow(base, 1.0 / (av - 1.0)) < kProbabilityFloor));
      }
    }
  }
}

TEST_CASE("permutation equivariance and shift invariance") {
  Rng rng(25);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.UniformIndex(20);
    const std::vector<double> s = Draw(rng, n, 2.0);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    rng.Shuffle(perm);
    std::vector<double> ps(n);
    for (std::size_t j = 0; j < n; ++j) ps[j] = s[perm[j]];
    const double shift = 10.0 * rng.Normal();
    std::vector<double> shifted = s;
    for (double& v : shifted) v += shift;
    for (double av : {1.0, 1.3, 1.5, 2.0}) {
      const SimplexVector base = Entmax(s, Alpha(av));
      const SimplexVector permuted = Entmax(ps, Alpha(av));
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(permuted.probs[j] == doctest::Approx(base.probs[perm[j]]).epsilon(1e-12));
      }
      const SimplexVector moved = Entmax(shifted, Alpha(av));
      CHECK(MaxDiff(moved.probs, base.probs) <= 1e-12);
      CHECK(moved.tau == doctest::Approx(base.tau + shift).epsilon(1e-9));
    }
  }
}

TEST_CASE("support shrinks as alpha grows from 1.5 to 2") {
  Rng rng(26);
  for (int t = 0; t < 1000; ++t) {
    const std::vector<double> s = Draw(rng, 2 + rng.UniformIndex(60), 1.0 + rng.Uniform());
    const auto wide = Entmax(s, Alpha(1.5)).support;
    const auto narrow = Entmax(s, Alpha(2.0)).support;
    CHECK(std::includes(wide.begin(), wide.end(), narrow.begin(), narrow.end()));
  }
}

TEST_CASE("oracle preserves order") {
  Rng rng(27);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> s = Draw(rng, 3 + rng.UniformIndex(20), 1.0);
    std::sort(s.begin(), s.end());
    const SimplexVector out = EntmaxOracle(s, Alpha(1.5));
    for (std::size_t j = 1; j < s.size(); ++j) CHECK(out.probs[j - 1] <= out.probs[j]);
  }
}

TEST_CASE("jvp of a uniform sparsemax output") {
  const std::size_t n = 5;
  const SimplexVector out = Entmax(std::vector<double>(n, 0.3), Alpha(2.0));
  const std::vector<double> jac = EntmaxJacobian(out, Alpha(2.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double expected = (i == j ? 1.0 : 0.0) - 1.0 / static_cast<double>(n);
      CHECK(jac[i * n + j] == doctest::Approx(expected).epsilon(1e-12));
    }
  const std::vector<double> ones(n, 1.0);
  for (double v : EntmaxJvp(out, Alpha(2.0), ones)) CHECK(std::abs(v) <= 1e-15);
}

TEST_CASE("jvp of a one-hot output is zero") {
  const SimplexVector out = Entmax(std::vector<double>{10, 0, 0, -1}, Alpha(1.5));
  const std::vector<double> up{0.3, -2.0, 5.0, 1.0};
  for (double v : EntmaxJvp(out, Alpha(1.5), up)) CHECK(v == 0.0);
}

TEST_CASE("jacobian matches central differences and is symmetric") {
  Rng rng(28);
  const double h = 1e-6;
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 3 + rng.UniformIndex(12);
    const std::vector<double> s = Draw(rng, n, 2.0);
    const Alpha a(t % 2 == 0 ? 1.5 : 1.3);
    const SimplexVector out = Entmax(s, a);
    bool kink = false;
    for (double v : s) kink = kink || std::abs(v - out.tau) < 1e-4;
    const std::vector<double> jac = EntmaxJacobian(out, a);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(jac[i * n + j] == jac[j * n + i]);
    if (kink) continue;
    ++checked;
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<double> e(n, 0.0);
      e[k] = 1.0;
      const std::vector<double> col = EntmaxJvp(out, a, e);
      std::vector<double> up = s, down = s;
      up[k] += h;
      down[k] -= h;
      const auto pu = Entmax(up, a).probs;
      const auto pd = Entmax(down, a).probs;
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs((pu[i] - pd[i]) / (2 * h) - col[i]) <= 1e-5);
      }
    }
  }
  CHECK(checked > 150);
}

}  // TEST_SUITE

}  // namespace
}  // namespace sagl
