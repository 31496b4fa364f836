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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sessionlens/timestamp.hpp"

namespace sessionlens {

enum class LogDialect { kCommon, kCombined };

std::string_view to_string(LogDialect dialect);

// One access-log record. `path` is the normalized request path (query string
// split off into `query`, trailing slash removed except for the root).
struct LogEntry {
  std::string client_host;
  std::optional<std::string> ident;
  std::optional<std::string> authuser;
  Timestamp timestamp;
  std::string method;
  std::string path;
  std::optional<std::string> query;
  std::string protocol;  // empty for HTTP/0.9 style requests
  int status = 0;
  std::optional<std::int64_t> bytes;
  std::optional<std::string> referrer;
  std::optional<std::string> user_agent;
  std::size_t line_no = 0;

  bool operator==(const LogEntry&) const = default;
};

struct ParseError {
  std::size_t line_no = 0;
  std::string reason;
};

// Either an entry or the reason the line was rejected.
class ParseResult {
 public:
  ParseResult(LogEntry entry) : entry_(std::move(entry)) {}
  ParseResult(ParseError error) : error_(std::move(error)) {}

  explicit operator bool() const { return entry_.has_value(); }
  const LogEntry& entry() const { return *entry_; }
  LogEntry& entry() { return *entry_; }
  const ParseError& error() const { return error_; }

 private:
  std::optional<LogEntry> entry_;
  ParseError error_;
};

ParseResult parse_line(std::string_view line, LogDialect dialect, std::size_t line_no = 1);

// Picks the dialect for a log from its first non-empty line: combined if it
// parses as combined, else common. nullopt when neither grammar accepts it.
std::optional<LogDialect> probe_dialect(std::string_view first_line);

// Renders an entry back into a log line of the given dialect.
std::string format_line(const LogEntry& entry, LogDialect dialect);

// Canonical URL identity: drops a scheme://authority prefix and the trailing
// slash (root stays "/"). Returns empty when the target is not a path.
std::string normalize_path(std::string_view target);

// ---------------------------------------------------------------------------
// Cleaning

enum class DropReason { kMalformed, kMethod, kStatus, kExtension, kRobot };

std::string_view to_string(DropReason reason);

struct CleaningRules {
  std::vector<std::string> allowed_methods{"GET"};
  std::vector<int> allowed_status{200, 304};
  // Compared case-insensitively against the extension of the last path segment.
  std::vector<std::string> dropped_extensions{"gif", "jpg", "jpeg", "png", "ico",
                                              "css", "js",  "swf",  "bmp", "svg",
                                              "woff", "ttf", "mp3", "mp4"};
  // Case-insensitive substrings of the user agent.
  std::vector<std::string> robot_agents{"bot", "crawler", "spider", "slurp"};
  // Hosts that ever fetched this path are treated as robots.
  std::string robots_path = "/robots.txt";
};

struct CleaningReport {
  std::size_t input_count = 0;
  std::size_t retained_count = 0;
  std::map<DropReason, std::size_t> dropped_by_reason;

  std::size_t dropped_total() const;
  bool operator==(const CleaningReport&) const = default;
};

struct CleanResult {
  std::vector<LogEntry> entries;
  CleaningReport report;
};

// Keeps the entries passing every rule, in order. Each dropped entry is
// counted once under the first failing rule: method, status, extension, robot.
CleanResult clean(std::span<const LogEntry> entries, const CleaningRules& rules);

// ---------------------------------------------------------------------------
// Whole-file ingestion

struct ParsedLog {
  LogDialect dialect = LogDialect::kCommon;
  std::vector<LogEntry> entries;
  std::vector<ParseError> errors;
  std::size_t line_count = 0;  // non-empty physical lines
};

// Parses every line; malformed lines are collected, never fatal. With no
// dialect given the first line that parses decides (throws InputError if no
// line matches either grammar).
ParsedLog parse_lines(std::span<const std::string> lines,
                      std::optional<LogDialect> dialect = std::nullopt);

// Reads a plain-text or gzip-compressed file into lines (CR/LF stripped).
// Throws InputError when the file cannot be opened.
std::vector<std::string> read_log_lines(const std::string& path);

// Cleaning over a parsed log: malformed lines enter the report as drops.
CleanResult clean(const ParsedLog& log, const CleaningRules& rules);

}  // namespace sessionlens
