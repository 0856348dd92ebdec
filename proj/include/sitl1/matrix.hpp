// Copyright 2026 The sitl1 Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SITL1_MATRIX_HPP_
#define SITL1_MATRIX_HPP_

#include <initializer_list>
#include <vector>

namespace sitl1 {

using Vector = std::vector<double>;

// Dense row-major matrix. Sized for desk-scale problems (hundreds of rows);
// everything is plain O(n^3) dense arithmetic.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols);
  // Takes entries in row-major order; rejects NaN/Inf and size mismatches.
  Matrix(int rows, int cols, Vector entries);

  static Matrix identity(int n);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  // n x 1 matrix holding v.
  static Matrix column(const Vector& v);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  Vector col(int j) const;
  Vector row(int i) const;
  void set_col(int j, const Vector& v);

  Matrix transposed() const;
  Matrix operator*(const Matrix& rhs) const;
  Vector operator*(const Vector& v) const;

  // Columns [first, first + count).
  Matrix col_range(int first, int count) const;
  // Rows picked by index, in the given order.
  Matrix rows_subset(const std::vector<int>& indices) const;

  const Vector& data() const { return data_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  Vector data_;
};

Matrix hcat(const Matrix& a, const Matrix& b);

double dot(const Vector& a, const Vector& b);
double norm1(const Vector& v);
double norm2(const Vector& v);
double norm_inf(const Vector& v);
// max |m(i,j)|
double max_abs(const Matrix& m);

Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(double s, const Vector& v);

// Entries of v at the given indices.
Vector gather(const Vector& v, const std::vector<int>& indices);

bool all_finite(const Vector& v);
void require_finite(const Vector& v, const char* what);

}  // namespace sitl1

#endif  // SITL1_MATRIX_HPP_
