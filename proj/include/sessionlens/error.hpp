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

#include <stdexcept>
#include <string>

namespace sessionlens {

enum class ErrorKind : int {
  kInput = 2,
  kReduction = 3,
  kClustering = 4,
  kConfig = 5,
};

// CLI exit status: 2 input (bad configuration counts as input), 3 reduction,
// 4 clustering.
constexpr int exit_code(ErrorKind kind) {
  return kind == ErrorKind::kConfig ? 2 : static_cast<int>(kind);
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Unreadable input, bad dialect, malformed artifact files.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorKind::kInput, what) {}
};

// Weight thresholds removed every row or every column.
class ReductionError : public Error {
 public:
  explicit ReductionError(const std::string& what)
      : Error(ErrorKind::kReduction, what) {}
};

class ClusteringError : public Error {
 public:
  explicit ClusteringError(const std::string& what)
      : Error(ErrorKind::kClustering, what) {}
};

// A membership column collapsed to zero mass; carries the cluster index so
// the caller can re-seed that center.
class DegenerateClusterError : public ClusteringError {
 public:
  explicit DegenerateClusterError(std::size_t cluster);
  std::size_t cluster() const noexcept { return cluster_; }

 private:
  std::size_t cluster_;
};

// Invalid parameter values (thresholds out of order, q <= 1, ...).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::kConfig, what) {}
};

}  // namespace sessionlens
