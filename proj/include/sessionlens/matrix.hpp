/*
 * Copyright 2026 The sessionlens Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace sessionlens {

// Row-major dense matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  const std::vector<double>& values() const { return data_; }

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Sessions x URLs data with per-row (session) and per-column (URL) weights.
// Built from sessions it holds 0/1 presence values; the clustering code
// accepts arbitrary real values, which the tests use for geometric fixtures.
struct SessionMatrix {
  DenseMatrix data;
  std::vector<double> row_weights;
  std::vector<double> col_weights;
  std::vector<std::size_t> row_ids;  // session id of each row
  std::vector<std::size_t> col_ids;  // vocabulary index of each column

  std::size_t rows() const { return data.rows(); }
  std::size_t cols() const { return data.cols(); }

  // Unit weights and identity ids.
  static SessionMatrix from_dense(DenseMatrix data);
  static SessionMatrix from_rows(const std::vector<std::vector<double>>& rows);

  // Throws ConfigError when vector lengths disagree with the shape.
  void check_shape() const;
};

// Portable dense text form: "m n" on the first line, then m rows of
// space-separated values (written with %.9g).
void write_dense(std::ostream& os, const DenseMatrix& m);

}  // namespace sessionlens
