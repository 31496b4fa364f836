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

#include <chrono>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sessionlens/logparse.hpp"

namespace sessionlens {

// A user is the pair (client host, user agent). Entries without a user agent
// share the empty agent.
struct UserId {
  std::string client_host;
  std::string user_agent;

  bool operator==(const UserId&) const = default;
  auto operator<=>(const UserId&) const = default;

  // Single-string form used in sessions.csv: host, a '|' separator, then agent.
  std::string key() const;
  static UserId from_key(std::string_view key);
};

struct UserEntries {
  UserId user;
  std::vector<LogEntry> entries;
};

// Ordered, duplicate-free list of URL paths with its reverse index.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> urls);

  // Index of `path`, appending it if unseen.
  std::size_t intern(const std::string& path);
  std::optional<std::size_t> find(const std::string& path) const;

  std::size_t size() const { return urls_.size(); }
  const std::string& at(std::size_t i) const { return urls_.at(i); }
  const std::vector<std::string>& urls() const { return urls_; }

 private:
  std::vector<std::string> urls_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct UserSession {
  std::size_t session_id = 0;
  UserId user;
  std::vector<std::size_t> url_indices;  // visit order, repeats kept
  Timestamp start;
  Timestamp end;
};

// Groups entries by user in order of each user's first appearance. Order
// within a user is preserved.
std::vector<UserEntries> identify_users(std::span<const LogEntry> entries);

// Splits each user's activity wherever the gap to the previous hit exceeds
// `timeout`. Sessions get dense ids in order of (start, first line number);
// the vocabulary is filled in that same order, walking each session's hits.
std::vector<UserSession> identify_sessions(std::span<const UserEntries> users,
                                           std::chrono::seconds timeout,
                                           Vocabulary& vocab);

inline constexpr std::chrono::seconds kDefaultSessionTimeout{30 * 60};

}  // namespace sessionlens
