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
#include <cstring>
#include <functional>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>

#include "doctest.h"
#include "sagl/config.h"
#include "sagl/errors.h"
#include "sagl/io.h"
#include "sagl/metrics.h"
#include "sagl/rng.h"
#include "sagl/svd.h"
#include "sagl/synthetic.h"

namespace fs = std::filesystem;

namespace sagl {
namespace {

fs::path TempFile(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "sagl_data_io_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string ErrorOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

Matrix ClassRows(const SyntheticData& d, std::size_t k) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < d.labels.labels.size(); ++i) {
    if (d.labels.labels[i] == k) idx.push_back(i);
  }
  return GatherRows(d.latent, idx);
}

TEST_SUITE("data_io") {

TEST_CASE("matrix header arithmetic") {
  const auto bytes = EncodeMatrix(Matrix::Identity(2), DType::kF64);
  CHECK(bytes.size() == 56);
  CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "SGLF");
  CHECK(bytes[4] == 1);
  CHECK(bytes[5] == 2);
  CHECK(bytes[6] == 0);
  CHECK(bytes[7] == 0);
  CHECK(bytes[8] == 2);  // little-endian rows
  CHECK(bytes[16] == 2);
  CHECK(EncodeMatrix(Matrix::Identity(2), DType::kF32).size() == 24 + 16);
}

TEST_CASE("f64 round trip is bit exact") {
  Rng rng(61);
  Matrix m = RandNormal(rng, 13, 7, 1e3);
  m(0, 0) = -0.0;
  m(0, 1) = std::numeric_limits<double>::denorm_min();
  m(0, 2) = std::numeric_limits<double>::max();
  const fs::path p = TempFile("m64.fmat");
  WriteMatrix(p, m);
  const FeatureMatrix back = ReadMatrix(p);
  CHECK(back.dtype_on_disk == DType::kF64);
  CHECK(std::memcmp(back.values.data().data(), m.data().data(), m.size() * 8) == 0);
  CHECK(EncodeMatrix(back.values, DType::kF64) == EncodeMatrix(m, DType::kF64));
}

TEST_CASE("f32 round trip after promotion") {
  Rng rng(62);
  Matrix m = RandNormal(rng, 100, 64, 1.0);
  for (double& v : m.data()) v = static_cast<double>(static_cast<float>(v));
  const fs::path p = TempFile("m32.fmat");
  WriteMatrix(p, m, DType::kF32);
  const FeatureMatrix back = ReadMatrix(p);
  CHECK(back.dtype_on_disk == DType::kF32);
  CHECK(back.values == m);
  CHECK(fs::file_size(p) == 24 + 100 * 64 * 4);
}

TEST_CASE("malformed matrix files") {
  const auto good = EncodeMatrix(Matrix::Identity(3), DType::kF64);
  auto truncated = good;
  truncated.resize(truncated.size() - 5);
  const std::string msg = ErrorOf([&] { DecodeMatrix(truncated); });
  CHECK(msg.find("expected 96") != std::string::npos);
  CHECK(msg.find("91") != std::string::npos);

  auto magic = good;
  magic[2] = 'Z';
  CHECK(ErrorOf([&] { DecodeMatrix(magic); }).find("offset 2") != std::string::npos);
  auto version = good;
  version[4] = 2;
  CHECK_THROWS_AS(DecodeMatrix(version), FormatError);
  auto dtype = good;
  dtype[5] = 3;
  CHECK_THROWS_AS(DecodeMatrix(dtype), FormatError);
  auto reserved = good;
  reserved[7] = 1;
  CHECK_THROWS_AS(DecodeMatrix(reserved), FormatError);
  auto header = good;
  header.resize(10);
  CHECK_THROWS_AS(DecodeMatrix(header), FormatError);
  auto nan = good;
  const double q = std::numeric_limits<double>::quiet_NaN();
  std::memcpy(nan.data() + 24, &q, 8);
  CHECK_THROWS_AS(DecodeMatrix(nan), FormatError);
  CHECK_THROWS_AS(ReadMatrix(TempFile("does_not_exist.fmat")), IoError);
}

TEST_CASE("label files") {
  const fs::path empty = TempFile("empty.lbl");
  WriteLabels(empty, LabelVector{});
  CHECK(fs::file_size(empty) == 13);
  CHECK(ReadLabels(empty).labels.empty());

  Rng rng(63);
  LabelVector big;
  big.num_classes = 1000;
  for (int i = 0; i < 100000; ++i) big.labels.push_back(rng.UniformIndex(1000));
  const fs::path p = TempFile("big.lbl");
  WriteLabels(p, big);
  CHECK(fs::file_size(p) == 13 + 4 * 100000);
  CHECK(ReadLabels(p).labels == big.labels);
  CHECK(ReadLabels(p, 1000).num_classes == 1000);

  LabelVector small{{0, 1, 5}, 6};
  const auto bytes = EncodeLabels(small);
  CHECK_THROWS_AS(DecodeLabels(bytes, 5), FormatError);
  CHECK(DecodeLabels(bytes).num_classes == 6);
  auto bad = bytes;
  bad[0] = 'X';
  CHECK_THROWS_AS(DecodeLabels(bad), FormatError);
  auto cut = bytes;
  cut.pop_back();
  CHECK_THROWS_AS(DecodeLabels(cut), FormatError);
}

TEST_CASE("csv ingestion") {
  const fs::path p = TempFile("x.csv");
  {
    std::ofstream out(p);
    out << "1,2,3\n4.5,-6,7e-1\n";
  }
  const FeatureMatrix m = LoadFeatures(p);
  CHECK(m.values == Matrix::FromRows({{1, 2, 3}, {4.5, -6, 0.7}}));
  {
    std::ofstream out(p);
    out << "1,2\n3\n";
  }
  CHECK_THROWS_AS(LoadFeatures(p), FormatError);
  {
    std::ofstream out(p);
    out << "1,abc\n";
  }
  CHECK_THROWS_AS(LoadFeatures(p), FormatError);
}

TEST_CASE("noise-free single subspace has rank d_sub") {
  SyntheticSpec spec;
  spec.subspaces = 1;
  spec.subspace_dim = 3;
  spec.ambient_dim = 12;
  spec.per_class = 40;
  spec.noise_sigma = 0.0;
  spec.views = 2;
  const SyntheticData d = GenerateSynthetic(spec);
  const SvdResult latent = Svd(d.latent);
  CHECK(latent.sigma[3] <= 1e-10);
  for (const Matrix& v : d.views) {
    const SvdResult s = Svd(v);
    CHECK(s.sigma[3] <= 1e-10 * s.sigma[0]);
    CHECK(s.sigma[2] > 1e-3 * s.sigma[0]);
  }
}

TEST_CASE("noise-free classes have rank exactly d_sub") {
  SyntheticSpec spec;
  spec.subspaces = 4;
  spec.noise_sigma = 0.0;
  spec.per_class = 30;
  const SyntheticData d = GenerateSynthetic(spec);
  for (std::size_t k = 0; k < 4; ++k) {
    const SvdResult s = Svd(ClassRows(d, k));
    CHECK(s.sigma[2] > 1e-6);
    CHECK(s.sigma[3] <= 1e-10);
  }
}

TEST_CASE("subspace bases are mutually orthogonal") {
  SyntheticSpec spec;
  spec.subspaces = 2;
  spec.noise_sigma = 0.0;
  const SyntheticData d = GenerateSynthetic(spec);
  CHECK(MaxAbsDiff(MatMulTN(d.bases[0], d.bases[1]), Matrix(3, 3)) <= 1e-14);
  CHECK(MaxAbsDiff(MatMulTN(d.bases[0], d.bases[0]), Matrix::Identity(3)) <= 1e-12);
}

TEST_CASE("same-label neighbours beat cross-label ones") {
  SyntheticSpec spec;  // K=4, d_sub=3, D=24, m=100, sigma=0.01
  spec.seed = 4;
  const SyntheticData d = GenerateSynthetic(spec);
  const Matrix& x = d.latent;
  const std::size_t n = x.rows();
  Matrix g = MatMulNT(x, x);
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    double same = -2.0, cross = -2.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double cos = g(i, j) / std::sqrt(g(i, i) * g(j, j));
      if (d.labels.labels[i] == d.labels.labels[j]) {
        same = std::max(same, cos);
      } else {
        cross = std::max(cross, cos);
      }
    }
    margin = std::min(margin, same - cross);
  }
  MESSAGE("empirical margin " << margin);
  CHECK(margin > 0.0);
}

TEST_CASE("views are heterogeneous but share labels") {
  SyntheticSpec spec;
  spec.test_per_class = 10;
  const SyntheticData d = GenerateSynthetic(spec);
  REQUIRE(d.views.size() == 2);
  const double cka = LinearCka(d.views[0], d.views[1]);
  CHECK(cka < 1.0 - 1e-6);
  CHECK(cka > 0.0);
  CHECK(d.labels.labels.size() == d.views[0].rows());
  CHECK(d.test_views[0].rows() == 40);
  CHECK(d.test_labels.labels.size() == 40);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(std::count(d.labels.labels.begin(), d.labels.labels.end(), k) == 100);
  }
}

TEST_CASE("generator is deterministic") {
  SyntheticSpec spec;
  spec.seed = 17;
  const SyntheticData a = GenerateSynthetic(spec);
  const SyntheticData b = GenerateSynthetic(spec);
  CHECK(a.views[0] == b.views[0]);
  CHECK(a.labels.labels == b.labels.labels);
  spec.seed = 18;
  CHECK_FALSE(GenerateSynthetic(spec).views[0] == a.views[0]);
}

TEST_CASE("tilted subspaces keep the requested angle") {
  SyntheticSpec spec;
  spec.min_principal_angle_deg = 60.0;
  spec.noise_sigma = 0.0;
  const SyntheticData d = GenerateSynthetic(spec);
  const SvdResult s = Svd(MatMulTN(d.bases[0], d.bases[1]));
  CHECK(std::acos(std::min(1.0, s.sigma[0])) * 180.0 / M_PI ==
        doctest::Approx(60.0).epsilon(1e-9));
}

TEST_CASE("invalid specs are rejected") {
  SyntheticSpec spec;
  spec.subspace_dim = 30;
  CHECK_THROWS_AS(ValidateSpec(spec), InvalidArgumentError);
  spec = SyntheticSpec{};
  spec.per_class = 2;
  CHECK_THROWS_AS(ValidateSpec(spec), InvalidArgumentError);
  spec = SyntheticSpec{};
  spec.subspaces = 9;
  CHECK_THROWS_AS(ValidateSpec(spec), InvalidArgumentError);
  spec = SyntheticSpec{};
  spec.noise_sigma = -1.0;
  CHECK_THROWS_AS(ValidateSpec(spec), InvalidArgumentError);
}

TEST_CASE("empty config gives the defaults") {
  const TrainConfig c = ParseConfigText("");
  CHECK(c.alpha == 1.5);
  CHECK(c.epochs == 600);
  CHECK(c.gamma == 10.0);
  CHECK(c.beta == 1.0);
  CHECK(c.lr == 1e-3);
  CHECK(c.drop_small_batch_threshold == 0.5);
  CHECK(c.gate_mode == GateMode::kMultiplicative);
  CHECK(c.gate_epsilon == 1e-6);
}

TEST_CASE("config parsing and errors") {
  const TrainConfig c = ParseConfigText(
      "# comment\n alpha = 2 \ngamma=5\nvariant=no_gate\ngate_mode=divisive\nseed=123\n\n");
  CHECK(c.alpha == 2.0);
  CHECK(c.gamma == 5.0);
  CHECK(c.variant == Variant::kNoGate);
  CHECK(c.gate_mode == GateMode::kDivisive);
  CHECK(c.seed == 123);
  CHECK(ErrorOf([] { ParseConfigText("alpha=0.5"); }).find("alpha") != std::string::npos);
  CHECK(ErrorOf([] { ParseConfigText("colour=red"); }).find("colour") != std::string::npos);
  CHECK(ErrorOf([] { ParseConfigText("lr=fast"); }).find("lr") != std::string::npos);
  CHECK_THROWS_AS(ParseConfigText("batch_size=1"), ConfigError);
  CHECK_THROWS_AS(ParseConfigText("dropout=1"), ConfigError);
  CHECK_THROWS_AS(ParseConfigText("novalue"), ConfigError);
  TrainConfig flags = ParseConfigText("gamma=5");
  ApplyConfigValue(flags, "gamma", "20");
  CHECK(flags.gamma == 20.0);
}

TEST_CASE("formatted config parses back exactly") {
  TrainConfig c;
  c.alpha = 1.2345678901234567;
  c.lr = 3e-4;
  c.num_classes = 9;
  c.seed = 0xFFFFFFFFFFFFULL;
  c.variant = Variant::kDenseGraph;
  const TrainConfig back = ParseConfigText(FormatConfig(c));
  CHECK(FormatConfig(back) == FormatConfig(c));
  CHECK(back.alpha == c.alpha);
}

}  // TEST_SUITE

}  // namespace
}  // namespace sagl
