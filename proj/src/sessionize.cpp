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

#include "sessionlens/sessionize.hpp"

#include <algorithm>
#include <map>

#include "sessionlens/error.hpp"

namespace sessionlens {

std::string UserId::key() const { return client_host + "|" + user_agent; }

UserId UserId::from_key(std::string_view key) {
  // Hosts never contain '|'; agents may.
  const auto bar = key.find('|');
  if (bar == std::string_view::npos) return UserId{std::string(key), {}};
  return UserId{std::string(key.substr(0, bar)), std::string(key.substr(bar + 1))};
}

Vocabulary::Vocabulary(std::vector<std::string> urls) {
  for (auto& u : urls) {
    if (index_.count(u)) throw InputError("duplicate vocabulary entry '" + u + "'");
    index_.emplace(u, urls_.size());
    urls_.push_back(std::move(u));
  }
}

std::size_t Vocabulary::intern(const std::string& path) {
  auto [it, inserted] = index_.try_emplace(path, urls_.size());
  if (inserted) urls_.push_back(path);
  return it->second;
}

std::optional<std::size_t> Vocabulary::find(const std::string& path) const {
  auto it = index_.find(path);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<UserEntries> identify_users(std::span<const LogEntry> entries) {
  std::vector<UserEntries> users;
  std::map<UserId, std::size_t> slot;
  for (const auto& e : entries) {
    UserId id{e.client_host, e.user_agent.value_or("")};
    auto [it, inserted] = slot.try_emplace(id, users.size());
    if (inserted) users.push_back(UserEntries{std::move(id), {}});
    users[it->second].entries.push_back(e);
  }
  return users;
}

namespace {

struct PendingSession {
  UserId user;
  std::vector<const LogEntry*> hits;
};

}  // namespace

std::vector<UserSession> identify_sessions(std::span<const UserEntries> users,
                                           std::chrono::seconds timeout,
                                           Vocabulary& vocab) {
  std::vector<PendingSession> pending;
  for (const auto& user : users) {
    std::vector<const LogEntry*> ordered;
    ordered.reserve(user.entries.size());
    for (const auto& e : user.entries) ordered.push_back(&e);
    std::stable_sort(ordered.begin(), ordered.end(), [](const LogEntry* a, const LogEntry* b) {
      if (a->timestamp != b->timestamp) return a->timestamp < b->timestamp;
      return a->line_no < b->line_no;
    });

    PendingSession* current = nullptr;
    for (const LogEntry* e : ordered) {
      if (current == nullptr ||
          e->timestamp.utc_seconds - current->hits.back()->timestamp.utc_seconds >
              timeout.count()) {
        pending.push_back(PendingSession{user.user, {}});
        current = &pending.back();
      }
      current->hits.push_back(e);
    }
  }

  std::stable_sort(pending.begin(), pending.end(),
                   [](const PendingSession& a, const PendingSession& b) {
                     const LogEntry* x = a.hits.front();
                     const LogEntry* y = b.hits.front();
                     if (x->timestamp != y->timestamp) return x->timestamp < y->timestamp;
                     return x->line_no < y->line_no;
                   });

  std::vector<UserSession> sessions;
  sessions.reserve(pending.size());
  for (auto& p : pending) {
    UserSession s;
    s.session_id = sessions.size();
    s.user = std::move(p.user);
    s.start = p.hits.front()->timestamp;
    s.end = p.hits.back()->timestamp;
    s.url_indices.reserve(p.hits.size());
    for (const LogEntry* e : p.hits) s.url_indices.push_back(vocab.intern(e->path));
    sessions.push_back(std::move(s));
  }
  return sessions;
}

}  // namespace sessionlens
