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

#ifndef SAGL_IO_H_
#define SAGL_IO_H_

// Binary file formats. All integers and floats are little-endian.
//
// Matrix (".fmat"):
//   offset 0  "SGLF"         magic
//   offset 4  u8 version     = 1
//   offset 5  u8 dtype       1 = IEEE-754 binary32, 2 = binary64
//   offset 6  u8[2]          reserved, zero
//   offset 8  u64 rows
//   offset 16 u64 cols
//   offset 24 rows*cols values, row-major, in the declared width
//
// Labels (".lbl"):
//   offset 0  "SGLL"         magic
//   offset 4  u8 version     = 1
//   offset 5  u64 n
//   offset 13 n x u32 labels

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sagl/matrix.h"

namespace sagl {

enum class DType : std::uint8_t { kF32 = 1, kF64 = 2 };

struct FeatureMatrix {
  Matrix values;
  std::string view_id;
  DType dtype_on_disk = DType::kF64;
};

struct LabelVector {
  std::vector<std::size_t> labels;
  std::size_t num_classes = 0;
};

inline constexpr std::size_t kMatrixHeaderBytes = 24;
inline constexpr std::size_t kLabelHeaderBytes = 13;

std::vector<std::uint8_t> EncodeMatrix(const Matrix& m, DType dtype);
// Throws FormatError naming the offending offset or byte counts.
FeatureMatrix DecodeMatrix(std::span<const std::uint8_t> bytes);

// Throw IoError on filesystem failures and FormatError on malformed content.
void WriteMatrix(const std::filesystem::path& path, const Matrix& m, DType dtype = DType::kF64);
FeatureMatrix ReadMatrix(const std::filesystem::path& path);

std::vector<std::uint8_t> EncodeLabels(const LabelVector& labels);
// When num_classes is given every label must be below it (FormatError
// otherwise); when absent it is inferred as max label + 1.
LabelVector DecodeLabels(std::span<const std::uint8_t> bytes,
                         std::optional<std::size_t> num_classes = std::nullopt);

void WriteLabels(const std::filesystem::path& path, const LabelVector& labels);
LabelVector ReadLabels(const std::filesystem::path& path,
                       std::optional<std::size_t> num_classes = std::nullopt);

// Headerless comma-separated values, one sample per row.
Matrix ReadCsvMatrix(const std::filesystem::path& path);

// ".csv" files go through ReadCsvMatrix, everything else through ReadMatrix.
FeatureMatrix LoadFeatures(const std::filesystem::path& path);

std::vector<std::uint8_t> ReadFileBytes(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace sagl

#endif  // SAGL_IO_H_
