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

#include "sagl/io.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "sagl/errors.h"

namespace sagl {
namespace {

constexpr char kMatrixMagic[4] = {'S', 'G', 'L', 'F'};
constexpr char kLabelMagic[4] = {'S', 'G', 'L', 'L'};
constexpr std::uint8_t kVersion = 1;

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <typename T>
void PutLe(std::vector<std::uint8_t>& out, T value) {
  std::uint8_t raw[sizeof(T)];
  std::memcpy(raw, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(raw, raw + sizeof(T));
  out.insert(out.end(), raw, raw + sizeof(T));
}

template <typename T>
T GetLe(std::span<const std::uint8_t> bytes, std::size_t offset) {
  std::uint8_t raw[sizeof(T)];
  std::memcpy(raw, bytes.data() + offset, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(raw, raw + sizeof(T));
  T value;
  std::memcpy(&value, raw, sizeof(T));
  return value;
}

void CheckMagic(std::span<const std::uint8_t> bytes, const char (&magic)[4], const char* what) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (bytes[i] != static_cast<std::uint8_t>(magic[i])) {
      throw FormatError(std::string(what) + ": bad magic at offset " + std::to_string(i) +
                        " (expected \"" + std::string(magic, 4) + "\")");
    }
  }
}

}  // namespace

std::vector<std::uint8_t> EncodeMatrix(const Matrix& m, DType dtype) {
  std::vector<std::uint8_t> out;
  const std::size_t width = dtype == DType::kF32 ? 4 : 8;
  out.reserve(kMatrixHeaderBytes + m.size() * width);
  out.insert(out.end(), kMatrixMagic, kMatrixMagic + 4);
  out.push_back(kVersion);
  out.push_back(static_cast<std::uint8_t>(dtype));
  out.push_back(0);
  out.push_back(0);
  PutLe<std::uint64_t>(out, m.rows());
  PutLe<std::uint64_t>(out, m.cols());
  for (double v : m.data()) {
    if (dtype == DType::kF32) {
      PutLe<float>(out, static_cast<float>(v));
    } else {
      PutLe<double>(out, v);
    }
  }
  return out;
}

FeatureMatrix DecodeMatrix(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kMatrixHeaderBytes) {
    throw FormatError("matrix file: header truncated, expected " +
                      std::to_string(kMatrixHeaderBytes) + " bytes, got " +
                      std::to_string(bytes.size()));
  }
  CheckMagic(bytes, kMatrixMagic, "matrix file");
  if (bytes[4] != kVersion) {
    throw FormatError("matrix file: unsupported version " + std::to_string(bytes[4]) +
                      " at offset 4");
  }
  const std::uint8_t dtype_byte = bytes[5];
  if (dtype_byte != 1 && dtype_byte != 2) {
    throw FormatError("matrix file: unknown dtype " + std::to_string(dtype_byte) + " at offset 5");
  }
  if (bytes[6] != 0 || bytes[7] != 0) {
    throw FormatError("matrix file: reserved bytes at offset 6 must be zero");
  }
  const auto dtype = static_cast<DType>(dtype_byte);
  const std::uint64_t rows = GetLe<std::uint64_t>(bytes, 8);
  const std::uint64_t cols = GetLe<std::uint64_t>(bytes, 16);
  const std::size_t width = dtype == DType::kF32 ? 4 : 8;
  if (cols != 0 && rows > (UINT64_MAX / cols) / width) {
    throw FormatError("matrix file: dimensions overflow");
  }
  const std::uint64_t expected = kMatrixHeaderBytes + rows * cols * width;
  if (bytes.size() != expected) {
    throw FormatError("matrix file: payload length mismatch, expected " +
                      std::to_string(expected) + " bytes, got " + std::to_string(bytes.size()));
  }
  std::vector<double> data(rows * cols);
  std::size_t offset = kMatrixHeaderBytes;
  for (std::size_t i = 0; i < data.size(); ++i, offset += width) {
    data[i] = dtype == DType::kF32 ? static_cast<double>(GetLe<float>(bytes, offset))
                                   : GetLe<double>(bytes, offset);
    if (!std::isfinite(data[i])) {
      throw FormatError("matrix file: non-finite value at offset " + std::to_string(offset));
    }
  }
  FeatureMatrix fm;
  fm.values = Matrix(rows, cols, std::move(data));
  fm.dtype_on_disk = dtype;
  return fm;
}

std::vector<std::uint8_t> ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read error on '" + path.string() + "'");
  return bytes;
}

void WriteFileBytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write error on '" + path.string() + "'");
}

void WriteMatrix(const std::filesystem::path& path, const Matrix& m, DType dtype) {
  WriteFileBytes(path, EncodeMatrix(m, dtype));
}

FeatureMatrix ReadMatrix(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = ReadFileBytes(path);
  try {
    FeatureMatrix fm = DecodeMatrix(bytes);
    fm.view_id = path.stem().string();
    return fm;
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> EncodeLabels(const LabelVector& labels) {
  std::vector<std::uint8_t> out;
  out.reserve(kLabelHeaderBytes + 4 * labels.labels.size());
  out.insert(out.end(), kLabelMagic, kLabelMagic + 4);
  out.push_back(kVersion);
  PutLe<std::uint64_t>(out, labels.labels.size());
  for (std::size_t y : labels.labels) {
    if (y > UINT32_MAX) throw InvalidArgumentError("label " + std::to_string(y) + " exceeds u32");
    PutLe<std::uint32_t>(out, static_cast<std::uint32_t>(y));
  }
  return out;
}

LabelVector DecodeLabels(std::span<const std::uint8_t> bytes,
                         std::optional<std::size_t> num_classes) {
  if (bytes.size() < kLabelHeaderBytes) {
    throw FormatError("label file: header truncated, expected " +
                      std::to_string(kLabelHeaderBytes) + " bytes, got " +
                      std::to_string(bytes.size()));
  }
  CheckMagic(bytes, kLabelMagic, "label file");
  if (bytes[4] != kVersion) {
    throw FormatError("label file: unsupported version " + std::to_string(bytes[4]) +
                      " at offset 4");
  }
  const std::uint64_t n = GetLe<std::uint64_t>(bytes, 5);
  if (n > (UINT64_MAX - kLabelHeaderBytes) / 4) throw FormatError("label file: count overflows");
  const std::uint64_t expected = kLabelHeaderBytes + 4 * n;
  if (bytes.size() != expected) {
    throw FormatError("label file: payload length mismatch, expected " +
                      std::to_string(expected) + " bytes, got " + std::to_string(bytes.size()));
  }
  LabelVector out;
  out.labels.resize(n);
  std::size_t max_label = 0;
  for (std::size_t i = 0; i < n; ++i) {
    out.labels[i] = GetLe<std::uint32_t>(bytes, kLabelHeaderBytes + 4 * i);
    max_label = std::max(max_label, out.labels[i]);
    if (num_classes && out.labels[i] >= *num_classes) {
      throw FormatError("label file: label " + std::to_string(out.labels[i]) + " at index " +
                        std::to_string(i) + " is not below num_classes " +
                        std::to_string(*num_classes));
    }
  }
  out.num_classes = num_classes ? *num_classes : (n == 0 ? 0 : max_label + 1);
  return out;
}

void WriteLabels(const std::filesystem::path& path, const LabelVector& labels) {
  WriteFileBytes(path, EncodeLabels(labels));
}

LabelVector ReadLabels(const std::filesystem::path& path, std::optional<std::size_t> num_classes) {
  const std::vector<std::uint8_t> bytes = ReadFileBytes(path);
  try {
    return DecodeLabels(bytes, num_classes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

Matrix ReadCsvMatrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::vector<double> data;
  std::size_t cols = 0, rows = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t count = 0;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const std::size_t comma = std::min(line.find(',', pos), line.size());
      std::size_t b = pos, e = comma;
      while (b < e && (line[b] == ' ' || line[b] == '\t')) ++b;
      while (e > b && (line[e - 1] == ' ' || line[e - 1] == '\t')) --e;
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(line.data() + b, line.data() + e, v);
      if (ec != std::errc() || ptr != line.data() + e || !std::isfinite(v)) {
        throw FormatError(path.string() + ":" + std::to_string(line_no) + ": cannot parse '" +
                          line.substr(b, e - b) + "' as a number");
      }
      data.push_back(v);
      ++count;
      pos = comma + 1;
    }
    if (rows == 0) {
      cols = count;
    } else if (count != cols) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                        std::to_string(cols) + " columns, found " + std::to_string(count));
    }
    ++rows;
  }
  if (rows == 0) throw FormatError(path.string() + ": no data rows");
  return Matrix(rows, cols, std::move(data));
}

FeatureMatrix LoadFeatures(const std::filesystem::path& path) {
  if (path.extension() == ".csv") {
    FeatureMatrix fm;
    fm.values = ReadCsvMatrix(path);
    fm.view_id = path.stem().string();
    fm.dtype_on_disk = DType::kF64;
    return fm;
  }
  return ReadMatrix(path);
}

}  // namespace sagl
