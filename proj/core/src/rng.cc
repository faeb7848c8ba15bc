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

#include "sagl/rng.h"

#include <cmath>
#include <numbers>
#include <utility>

#include "sagl/errors.h"

namespace sagl {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer.
constexpr std::uint64_t Mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t DeriveKey(std::uint64_t parent, std::uint64_t stream) {
  return Mix(Mix(parent + kGolden) ^ Mix(stream * kGolden + 0x632BE59BD9B4E019ULL));
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : key_(DeriveKey(seed, stream)) {}

Rng Rng::Split(std::uint64_t stream_id) const {
  Rng child(0);
  child.key_ = DeriveKey(key_, stream_id);
  return child;
}

std::uint64_t Rng::NextU64() {
  // Two rounds so that neighbouring counters decorrelate fully.
  return Mix(Mix(key_ ^ (counter_++ * kGolden)) + key_);
}

double Rng::Uniform() { return static_cast<double>(NextU64() >> 11) * 0x1.0p-53; }

std::size_t Rng::UniformIndex(std::size_t n) {
  if (n == 0) throw InvalidArgumentError("Rng::UniformIndex: n must be positive");
  // Lemire's multiply-shift; the bias is below 2^-64 * n and irrelevant here.
  __extension__ using U128 = unsigned __int128;
  const U128 wide = static_cast<U128>(NextU64()) * n;
  return static_cast<std::size_t>(wide >> 64);
}

double Rng::Normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = Uniform();
  while (u1 <= 0.0) u1 = Uniform();
  const double u2 = Uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

void Rng::Shuffle(std::span<std::size_t> values) {
  for (std::size_t i = values.size(); i > 1; --i) {
    std::swap(values[i - 1], values[UniformIndex(i)]);
  }
}

Matrix RandNormal(Rng& rng, std::size_t rows, std::size_t cols, double stddev) {
  if (!(stddev >= 0.0)) throw InvalidArgumentError("RandNormal: stddev must be >= 0");
  Matrix m(rows, cols);
  if (stddev == 0.0) return m;
  for (double& v : m.data()) v = stddev * rng.Normal();
  return m;
}

}  // namespace sagl
