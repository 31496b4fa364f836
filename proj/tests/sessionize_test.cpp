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

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "sessionlens/timestamp.hpp"
#include "testing.hpp"

namespace sessionlens {
namespace {

using std::chrono::minutes;

LogEntry hit(const std::string& host, const std::string& ua, const std::string& path,
             std::int64_t seconds, std::size_t line_no) {
  LogEntry e;
  e.client_host = host;
  e.user_agent = ua;
  e.method = "GET";
  e.path = path;
  e.status = 200;
  e.timestamp = Timestamp{1296550800 + seconds, 330};
  e.line_no = line_no;
  return e;
}

std::vector<UserSession> sessionize(const std::vector<LogEntry>& entries, Vocabulary& vocab,
                                    std::chrono::seconds timeout = kDefaultSessionTimeout) {
  const auto users = identify_users(entries);
  return identify_sessions(users, timeout, vocab);
}

TEST(UserId, KeyRoundTrip) {
  const UserId id{"10.0.0.1", "Mozilla/5.0 (X11; a|b)"};
  EXPECT_EQ(UserId::from_key(id.key()), id);
  const UserId empty{"host", ""};
  EXPECT_EQ(UserId::from_key(empty.key()), empty);
}

TEST(IdentifyUsers, DistinctHosts) {
  const std::vector<LogEntry> entries = {hit("A", "Mozilla", "/a", 0, 1),
                                         hit("B", "Mozilla", "/a", 1, 2)};
  EXPECT_EQ(identify_users(entries).size(), 2u);
}

TEST(IdentifyUsers, SameHostDifferentAgents) {
  const std::vector<LogEntry> entries = {hit("A", "Mozilla", "/a", 0, 1),
                                         hit("A", "Opera", "/a", 1, 2),
                                         hit("A", "Mozilla", "/b", 2, 3)};
  const auto users = identify_users(entries);
  ASSERT_EQ(users.size(), 2u);
  EXPECT_EQ(users[0].user, (UserId{"A", "Mozilla"}));
  EXPECT_EQ(users[0].entries.size(), 2u);
  EXPECT_EQ(users[1].user, (UserId{"A", "Opera"}));
}

TEST(IdentifySessions, TimeoutSplitsOnLongGap) {
  const std::vector<LogEntry> entries = {hit("A", "M", "/a", 0, 1),
                                         hit("A", "M", "/b", 10 * 60, 2),
                                         hit("A", "M", "/c", 50 * 60, 3)};
  Vocabulary vocab;
  const auto sessions = sessionize(entries, vocab, minutes(30));
  ASSERT_EQ(sessions.size(), 2u);
  EXPECT_EQ(sessions[0].url_indices.size(), 2u);
  EXPECT_EQ(sessions[1].url_indices.size(), 1u);
  EXPECT_EQ(sessions[0].end.utc_seconds - sessions[0].start.utc_seconds, 600);
}

TEST(IdentifySessions, GapEqualToTimeoutStaysInSession) {
  const std::vector<LogEntry> entries = {hit("A", "M", "/a", 0, 1),
                                         hit("A", "M", "/b", 30 * 60, 2)};
  Vocabulary vocab;
  EXPECT_EQ(sessionize(entries, vocab, minutes(30)).size(), 1u);
}

TEST(IdentifySessions, SingleHit) {
  const std::vector<LogEntry> entries = {hit("A", "M", "/a", 0, 1)};
  Vocabulary vocab;
  const auto sessions = sessionize(entries, vocab);
  ASSERT_EQ(sessions.size(), 1u);
  EXPECT_EQ(sessions[0].url_indices, std::vector<std::size_t>{0});
  EXPECT_EQ(sessions[0].start, sessions[0].end);
}

TEST(IdentifySessions, RepeatsAreKeptAndVocabularyIsFirstSeen) {
  const std::vector<LogEntry> entries = {hit("B", "M", "/z", 100, 1),
                                         hit("A", "M", "/y", 0, 2),
                                         hit("A", "M", "/y", 60, 3),
                                         hit("A", "M", "/z", 120, 4)};
  Vocabulary vocab;
  const auto sessions = sessionize(entries, vocab);
  ASSERT_EQ(sessions.size(), 2u);
  // User A starts first, so it gets id 0 and its URLs are interned first.
  EXPECT_EQ(sessions[0].user.client_host, "A");
  EXPECT_EQ(sessions[0].session_id, 0u);
  EXPECT_EQ(sessions[0].url_indices, (std::vector<std::size_t>{0, 0, 1}));
  EXPECT_EQ(vocab.urls(), (std::vector<std::string>{"/y", "/z"}));
  EXPECT_EQ(sessions[1].url_indices, std::vector<std::size_t>{1});
}

TEST(IdentifySessions, OutOfOrderEntriesAreSortedStably) {
  const std::vector<LogEntry> entries = {hit("A", "M", "/late", 300, 1),
                                         hit("A", "M", "/first", 0, 2),
                                         hit("A", "M", "/tie", 0, 3)};
  Vocabulary vocab;
  const auto sessions = sessionize(entries, vocab);
  ASSERT_EQ(sessions.size(), 1u);
  EXPECT_EQ(vocab.urls(), (std::vector<std::string>{"/first", "/tie", "/late"}));
}

TEST(Vocabulary, InternFindAndDuplicates) {
  Vocabulary v;
  EXPECT_EQ(v.intern("/a"), 0u);
  EXPECT_EQ(v.intern("/b"), 1u);
  EXPECT_EQ(v.intern("/a"), 0u);
  EXPECT_EQ(v.find("/b"), 1u);
  EXPECT_FALSE(v.find("/c"));
  EXPECT_ANY_THROW(Vocabulary(std::vector<std::string>{"/a", "/a"}));
}

std::vector<LogEntry> random_log(std::mt19937_64& rng, std::size_t count) {
  std::vector<LogEntry> out;
  std::int64_t t = 0;
  for (std::size_t i = 0; i < count; ++i) {
    t += static_cast<std::int64_t>(testing::pick(rng, 0, 3000));
    out.push_back(hit("h" + std::to_string(testing::pick(rng, 0, 4)),
                      testing::pick(rng, 0, 1) ? "M" : "O",
                      "/p" + std::to_string(testing::pick(rng, 0, 20)), t, i + 1));
  }
  return out;
}

TEST(IdentifySessions, PartitionAndStructureProperties) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const auto entries = random_log(rng, testing::pick(rng, 1, 120));
    Vocabulary vocab;
    const auto sessions = sessionize(entries, vocab);

    std::size_t total = 0;
    std::set<std::string> seen;
    for (std::size_t s = 0; s < sessions.size(); ++s) {
      const auto& sess = sessions[s];
      EXPECT_EQ(sess.session_id, s);
      EXPECT_FALSE(sess.url_indices.empty());
      EXPECT_GE(sess.end, sess.start);
      if (s > 0) { EXPECT_GE(sess.start, sessions[s - 1].start); }
      for (auto k : sess.url_indices) {
        ASSERT_LT(k, vocab.size());
        seen.insert(vocab.at(k));
      }
      total += sess.url_indices.size();
    }
    EXPECT_EQ(total, entries.size());
    EXPECT_EQ(seen.size(), vocab.size());
    for (std::size_t k = 0; k < vocab.size(); ++k) EXPECT_EQ(vocab.find(vocab.at(k)), k);
  }
}

TEST(IdentifySessions, ConsecutiveHitsWithinTimeout) {
  std::mt19937_64 rng(8);
  const auto entries = random_log(rng, 200);
  const auto users = identify_users(entries);
  Vocabulary vocab;
  const auto sessions = identify_sessions(users, kDefaultSessionTimeout, vocab);
  // Rebuild each session's hit times by replaying its user's entries.
  for (const auto& u : users) {
    std::vector<std::int64_t> times;
    for (const auto& e : u.entries) times.push_back(e.timestamp.utc_seconds);
    std::sort(times.begin(), times.end());
    std::size_t boundaries = 1;
    for (std::size_t i = 1; i < times.size(); ++i)
      if (times[i] - times[i - 1] > kDefaultSessionTimeout.count()) ++boundaries;
    std::size_t count = 0;
    for (const auto& s : sessions) count += s.user == u.user;
    EXPECT_EQ(count, boundaries);
  }
}

TEST(IdentifySessions, ShiftInvariance) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    auto entries = random_log(rng, 60);
    Vocabulary v1;
    const auto base = sessionize(entries, v1);
    const std::int64_t shift = static_cast<std::int64_t>(testing::pick(rng, 1, 1u << 30));
    for (auto& e : entries) e.timestamp.utc_seconds += shift;
    Vocabulary v2;
    const auto shifted = sessionize(entries, v2);
    ASSERT_EQ(base.size(), shifted.size());
    EXPECT_EQ(v1.urls(), v2.urls());
    for (std::size_t s = 0; s < base.size(); ++s) {
      EXPECT_EQ(base[s].user, shifted[s].user);
      EXPECT_EQ(base[s].url_indices, shifted[s].url_indices);
      EXPECT_EQ(base[s].start.utc_seconds + shift, shifted[s].start.utc_seconds);
    }
  }
}

}  // namespace
}  // namespace sessionlens
