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

#include <string>
#include <string_view>
#include <vector>

#include "sessionlens/config.hpp"
#include "sessionlens/logparse.hpp"
#include "sessionlens/sessionize.hpp"
#include "sessionlens/validity.hpp"
#include "sessionlens/weighting.hpp"

namespace sessionlens {

struct SessionSet {
  Vocabulary vocab;
  std::vector<UserSession> sessions;
};

struct PreprocessResult {
  LogDialect dialect = LogDialect::kCommon;
  CleaningReport cleaning;
  std::size_t users = 0;
  SessionSet data;
};

// parse -> clean -> users -> sessions, from cfg.input.
PreprocessResult preprocess(const PipelineConfig& cfg);

struct WeighResult {
  SessionMatrix raw;    // unreduced, unit weights (input of unweighted runs)
  Reduction reduction;  // reduced matrix with weights (input of weighted runs)
};

WeighResult weigh(const SessionSet& data, const WeightConfig& cfg);

// Artifact I/O. Each writer honours the emit_* switches of the config.
void write_preprocess_artifacts(const PreprocessResult& r, const PipelineConfig& cfg);
void write_weigh_artifacts(const SessionSet& data, const WeighResult& w,
                           const PipelineConfig& cfg);
SessionSet load_sessions(const std::string& output_dir);

// Text written by `sweep`: best k per series and which optimum has lower S.
std::string sweep_summary(const SweepResult& r);
std::string sweep_csv(const SweepResult& r);

// JSON document for one clustering run.
std::string clusters_json(const SessionMatrix& matrix, const FcmConfig& cfg,
                          const FcmState& state, double membership_floor);

// Subcommands. Each returns the human-readable summary and throws
// sessionlens::Error subclasses whose kind maps to the exit code.
std::string cmd_preprocess(const PipelineConfig& cfg);
std::string cmd_weigh(const PipelineConfig& cfg);
std::string cmd_cluster(const PipelineConfig& cfg);
std::string cmd_sweep(const PipelineConfig& cfg);
std::string cmd_fixture(const PipelineConfig& cfg);

// Dispatches by name: preprocess, weigh, cluster, sweep, fixture.
std::string run_command(std::string_view name, const PipelineConfig& cfg);

std::vector<std::string> command_names();

}  // namespace sessionlens
