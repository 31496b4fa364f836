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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sessionlens/clustering.hpp"
#include "sessionlens/logparse.hpp"
#include "sessionlens/validity.hpp"
#include "sessionlens/weighting.hpp"

namespace sessionlens {

// Every knob of the pipeline in one place. Populated from a flat
// `key = value` file and then from command-line overrides, both through set().
struct PipelineConfig {
  std::string input;                      // empty: reuse artifacts in output_dir
  std::optional<LogDialect> dialect;      // empty: probe the first line
  std::string output_dir = "sessionlens_out";
  CleaningRules cleaning;
  long session_timeout_minutes = 30;

  long alpha1 = 1, alpha2 = 6, beta1 = 1, beta2 = 6;

  double q = 2.0;
  double epsilon = 1e-5;
  std::size_t max_iter = 300;
  std::uint64_t seed = 42;
  std::size_t k_min = 2;
  std::optional<std::size_t> k_max;
  std::optional<std::size_t> k;           // single-k clustering
  double membership_floor = 0.0;
  std::optional<std::size_t> threads;     // empty: SESSIONLENS_THREADS

  bool emit_sessions = true;
  bool emit_vocabulary = true;
  bool emit_cleaning = true;
  bool emit_weights = true;
  bool emit_reduction = true;
  bool emit_matrices = true;
  bool emit_histogram = true;
  bool emit_clusters = true;

  // fixture subcommand
  std::string fixture_output;             // empty: <output_dir>/fixture.log
  std::size_t fixture_profiles = 2;
  std::size_t fixture_sessions = 60;
  bool fixture_noise = true;

  // Throws ConfigError for unknown keys or unparsable values. Keys accept
  // '-' in place of '_'.
  void set(std::string_view key, std::string_view value);

  // Reads `key = value` lines; '#' starts a comment. Throws InputError when
  // the file cannot be read.
  void load_file(const std::string& path);

  // Cross-field checks (threshold order, q > 1, ...). Throws ConfigError.
  void validate() const;

  WeightConfig weight_config() const;
  FcmConfig fcm_config(DistanceMode mode) const;
  SweepOptions sweep_options() const;
  std::string fixture_path() const;

  static std::vector<std::string> known_keys();
};

}  // namespace sessionlens
