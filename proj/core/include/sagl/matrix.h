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

#ifndef SAGL_MATRIX_H_
#define SAGL_MATRIX_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sagl {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  // Throws ShapeError when data.size() != rows * cols.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix Identity(std::size_t n);
  static Matrix FromRows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  bool AllFinite() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// a * b. Throws ShapeError on mismatch and NumericalError on a non-finite result.
Matrix MatMul(const Matrix& a, const Matrix& b);
// a^T * b without materializing the transpose.
Matrix MatMulTN(const Matrix& a, const Matrix& b);
// a * b^T without materializing the transpose.
Matrix MatMulNT(const Matrix& a, const Matrix& b);

Matrix Transpose(const Matrix& m);
Matrix Add(const Matrix& a, const Matrix& b);
Matrix Subtract(const Matrix& a, const Matrix& b);
Matrix Scale(const Matrix& m, double s);
Matrix Hadamard(const Matrix& a, const Matrix& b);

// In-place a += s * b.
void Axpy(double s, const Matrix& b, Matrix& a);

double FrobeniusNorm(const Matrix& m);
double MaxAbsDiff(const Matrix& a, const Matrix& b);
// ||a - b||_F / max(||b||_F, tiny).
double RelativeFrobeniusError(const Matrix& a, const Matrix& b);

// Rows of m selected by index, in the given order.
Matrix GatherRows(const Matrix& m, std::span<const std::size_t> indices);

// Each row replaced by its softmax.
Matrix RowSoftmax(const Matrix& m);

}  // namespace sagl

#endif  // SAGL_MATRIX_H_
