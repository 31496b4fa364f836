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
#include <string>
#include <vector>

namespace sessionlens {

// Synthetic combined-format access log with planted structure: each profile
// owns a disjoint set of pages (a core path plus occasional detours), each
// user browses one profile, and sessions of one user are separated by hours.
// Noise (embedded objects, robots, 404s, POSTs, malformed lines, single-page
// sessions, once-seen URLs) is optional.
struct FixtureOptions {
  std::size_t profiles = 2;
  std::size_t sessions = 60;  // planted multi-page sessions
  std::size_t pages_per_profile = 6;
  std::size_t sessions_per_user = 3;
  std::uint64_t seed = 42;
  bool noise = true;
};

struct FixtureTruth {
  std::string user_key;
  std::string start;    // CLF timestamp of the first page view
  std::size_t profile = 0;
  std::string kind;     // "planted" or "short"
};

struct FixtureLog {
  std::vector<std::string> lines;  // time ordered
  std::vector<FixtureTruth> truth;
};

FixtureLog generate_fixture(const FixtureOptions& options);

// Writes the log (gzip-compressed when the path ends in ".gz") and the truth
// sidecar `<path>.truth.csv`. Throws InputError on I/O failure.
void write_fixture(const FixtureLog& log, const std::string& path);

}  // namespace sessionlens
