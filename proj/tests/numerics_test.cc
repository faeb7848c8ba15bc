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

#include <cmath>
#include <numeric>

#include "doctest.h"
#include "oracles.h"
#include "sagl/errors.h"
#include "sagl/matrix.h"
#include "sagl/rng.h"
#include "sagl/svd.h"

namespace sagl {
namespace {

double OrthonormalityResidual(const Matrix& q) {
  return MaxAbsDiff(MatMulTN(q, q), Matrix::Identity(q.cols()));
}

TEST_SUITE("numerics") {

TEST_CASE("identity times M is M") {
  Rng rng(1);
  const Matrix m = RandNormal(rng, 3, 5, 1.0);
  CHECK(MatMul(Matrix::Identity(3), m) == m);
}

TEST_CASE("zero matrix annihilates") {
  Rng rng(2);
  const Matrix m = RandNormal(rng, 3, 4, 1.0);
  CHECK(MatMul(Matrix(2, 3), m) == Matrix(2, 4));
}

TEST_CASE("product matches triple-loop oracle") {
  Rng rng(3);
  const Matrix a = RandNormal(rng, 4, 3, 1.0);
  const Matrix b = RandNormal(rng, 3, 2, 1.0);
  CHECK(MaxAbsDiff(MatMul(a, b), oracle::TripleLoopMatMul(a, b)) <= 1e-12);
  CHECK(MaxAbsDiff(MatMulTN(Transpose(a), b), oracle::TripleLoopMatMul(a, b)) <= 1e-12);
  CHECK(MaxAbsDiff(MatMulNT(a, Transpose(b)), oracle::TripleLoopMatMul(a, b)) <= 1e-12);
}

TEST_CASE("shape mismatch throws") {
  CHECK_THROWS_AS(MatMul(Matrix(2, 3), Matrix(2, 3)), ShapeError);
  CHECK_THROWS_AS(Add(Matrix(2, 3), Matrix(3, 2)), ShapeError);
  CHECK_THROWS_AS(Matrix(2, 2, std::vector<double>(3)), ShapeError);
}

TEST_CASE("non-finite product throws") {
  const Matrix big(1, 2, 1e308);
  CHECK_THROWS_AS(MatMul(big, Matrix(2, 1, 1e308)), NumericalError);
}

TEST_CASE("matrix product is associative") {
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const std::size_t m = 1 + rng.UniformIndex(8);
    const std::size_t k = 1 + rng.UniformIndex(8);
    const std::size_t p = 1 + rng.UniformIndex(8);
    const std::size_t q = 1 + rng.UniformIndex(8);
    const Matrix a = RandNormal(rng, m, k, 1.0);
    const Matrix b = RandNormal(rng, k, p, 1.0);
    const Matrix c = RandNormal(rng, p, q, 1.0);
    CHECK(RelativeFrobeniusError(MatMul(MatMul(a, b), c), MatMul(a, MatMul(b, c))) <= 1e-9);
  }
}

TEST_CASE("row softmax rows sum to one") {
  Rng rng(5);
  const Matrix q = RowSoftmax(RandNormal(rng, 7, 4, 3.0));
  for (std::size_t i = 0; i < q.rows(); ++i) {
    const auto r = q.row(i);
    CHECK(std::accumulate(r.begin(), r.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("svd of a diagonal matrix") {
  const Matrix d = Matrix::FromRows({{3, 0, 0}, {0, 2, 0}, {0, 0, 1}});
  const SvdResult r = Svd(d);
  REQUIRE(r.sigma.size() == 3);
  CHECK(r.sigma[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(r.sigma[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r.sigma[2] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("svd of the zero matrix") {
  const SvdResult r = Svd(Matrix(4, 3));
  for (double s : r.sigma) CHECK(s == 0.0);
  CHECK(OrthonormalityResidual(r.u) <= 1e-10);
  CHECK(OrthonormalityResidual(r.v) <= 1e-10);
}

TEST_CASE("svd of random 6x4") {
  Rng rng(6);
  const Matrix m = RandNormal(rng, 6, 4, 1.0);
  const SvdResult r = Svd(m);
  CHECK(RelativeFrobeniusError(Reconstruct(r), m) < 1e-10);
  CHECK(OrthonormalityResidual(r.u) < 1e-10);
  CHECK(OrthonormalityResidual(r.v) < 1e-10);
  for (std::size_t i = 1; i < r.sigma.size(); ++i) CHECK(r.sigma[i - 1] >= r.sigma[i]);
}

TEST_CASE("svd reconstruction on sizes up to 64x64") {
  Rng rng(7);
  const std::size_t sizes[][2] = {{1, 1}, {3, 7}, {7, 3}, {16, 16}, {40, 25}, {25, 40}, {64, 64}};
  for (const auto& s : sizes) {
    const Matrix m = RandNormal(rng, s[0], s[1], 1.0);
    const SvdResult r = Svd(m);
    CAPTURE(s[0]);
    CAPTURE(s[1]);
    CHECK(RelativeFrobeniusError(Reconstruct(r), m) <= 1e-10);
    CHECK(OrthonormalityResidual(r.u) <= 1e-10);
    CHECK(OrthonormalityResidual(r.v) <= 1e-10);
    for (double v : r.sigma) CHECK(v >= 0.0);
  }
}

TEST_CASE("svd of a rank-deficient matrix completes the basis") {
  Rng rng(8);
  const Matrix a = RandNormal(rng, 8, 2, 1.0);
  const Matrix m = MatMulNT(a, RandNormal(rng, 5, 2, 1.0));  // rank 2
  const SvdResult r = Svd(m);
  CHECK(r.sigma[2] <= 1e-12 * r.sigma[0]);
  CHECK(RelativeFrobeniusError(Reconstruct(r), m) <= 1e-10);
  CHECK(OrthonormalityResidual(r.u) <= 1e-10);
}

TEST_CASE("svd iteration cap raises") {
  Rng rng(9);
  SvdOptions opts;
  opts.max_sweeps = 1;
  CHECK_THROWS_AS(Svd(RandNormal(rng, 12, 12, 1.0), opts), NumericalError);
}

TEST_CASE("rand_normal with zero stddev is zero") {
  Rng rng(10);
  CHECK(RandNormal(rng, 3, 4, 0.0) == Matrix(3, 4));
  CHECK_THROWS_AS(RandNormal(rng, 1, 1, -1.0), InvalidArgumentError);
}

TEST_CASE("equal seeds give identical streams") {
  Rng a(42, 3);
  Rng b(42, 3);
  CHECK(RandNormal(a, 5, 5, 1.0) == RandNormal(b, 5, 5, 1.0));
  Rng c(42, 4);
  Rng d(42, 3);
  CHECK_FALSE(RandNormal(c, 5, 5, 1.0) == RandNormal(d, 5, 5, 1.0));
  Rng e(1);
  Rng f(1);
  for (int i = 0; i < 100; ++i) CHECK(e.NextU64() == f.NextU64());
  CHECK(Rng(5).Split(9).NextU64() == Rng(5).Split(9).NextU64());
}

TEST_CASE("empirical stddev within five percent") {
  Rng rng(11);
  const Matrix m = RandNormal(rng, 100, 100, 2.5);
  double mean = 0.0;
  for (double v : m.data()) mean += v;
  mean /= static_cast<double>(m.size());
  double var = 0.0;
  for (double v : m.data()) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / static_cast<double>(m.size() - 1));
  CHECK(std::abs(sd - 2.5) <= 0.05 * 2.5);
  CHECK(std::abs(mean) <= 0.1);
}

TEST_CASE("shuffle is a permutation and uniform index stays in range") {
  Rng rng(12);
  std::vector<std::size_t> v(50);
  std::iota(v.begin(), v.end(), 0);
  rng.Shuffle(v);
  std::vector<std::size_t> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) CHECK(sorted[i] == i);
  for (int i = 0; i < 1000; ++i) CHECK(rng.UniformIndex(7) < 7);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.Uniform();
    CHECK((u >= 0.0 && u < 1.0));
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace sagl
