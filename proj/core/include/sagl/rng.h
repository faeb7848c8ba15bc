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

#ifndef SAGL_RNG_H_
#define SAGL_RNG_H_

#include <cstddef>
#include <cstdint>
#include <span>

#include "sagl/matrix.h"

namespace sagl {

// Counter-based 64-bit generator keyed by (seed, stream id).
//
// Every output is a pure function of the key and a counter, so two
// generators built from the same (seed, stream) produce identical streams on
// every platform. Consumers never share a generator; they call Split() with
// their own stream id instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  // Independent child stream derived from this generator's key.
  Rng Split(std::uint64_t stream_id) const;

  std::uint64_t NextU64();
  // Uniform on [0, 1) with 53 bits of resolution.
  double Uniform();
  // Uniform on [0, n). n must be positive.
  std::size_t UniformIndex(std::size_t n);
  // Standard normal via Box-Muller.
  double Normal();

  // In-place Fisher-Yates shuffle.
  void Shuffle(std::span<std::size_t> values);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// rows x cols matrix of i.i.d. N(0, stddev^2) entries.
// Throws InvalidArgumentError when stddev is negative.
Matrix RandNormal(Rng& rng, std::size_t rows, std::size_t cols, double stddev);

}  // namespace sagl

#endif  // SAGL_RNG_H_
