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

#include "sessionlens/matrix.hpp"

#include <numeric>
#include <ostream>
#include <string>

#include "sessionlens/error.hpp"
#include "sessionlens/format.hpp"

namespace sessionlens {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw ConfigError("dense matrix data size mismatch");
}

SessionMatrix SessionMatrix::from_dense(DenseMatrix data) {
  SessionMatrix m;
  m.row_weights.assign(data.rows(), 1.0);
  m.col_weights.assign(data.cols(), 1.0);
  m.row_ids.resize(data.rows());
  m.col_ids.resize(data.cols());
  std::iota(m.row_ids.begin(), m.row_ids.end(), std::size_t{0});
  std::iota(m.col_ids.begin(), m.col_ids.end(), std::size_t{0});
  m.data = std::move(data);
  return m;
}

SessionMatrix SessionMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.empty() ? 0 : rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw ConfigError("ragged rows");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return from_dense(DenseMatrix(rows.size(), n, std::move(flat)));
}

void SessionMatrix::check_shape() const {
  if (row_weights.size() != rows() || row_ids.size() != rows())
    throw ConfigError("row weight/id vector length differs from row count");
  if (col_weights.size() != cols() || col_ids.size() != cols())
    throw ConfigError("column weight/id vector length differs from column count");
}

void write_dense(std::ostream& os, const DenseMatrix& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) os << ' ';
      os << format_real(m(r, c));
    }
    os << '\n';
  }
}

}  // namespace sessionlens
