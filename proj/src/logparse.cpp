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

#include "sessionlens/logparse.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "sessionlens/error.hpp"

namespace sessionlens {

std::string_view to_string(LogDialect dialect) {
  return dialect == LogDialect::kCombined ? "combined" : "common";
}

std::string_view to_string(DropReason reason) {
  switch (reason) {
    case DropReason::kMalformed: return "malformed";
    case DropReason::kMethod: return "method";
    case DropReason::kStatus: return "status";
    case DropReason::kExtension: return "extension";
    case DropReason::kRobot: return "robot";
  }
  return "unknown";
}

std::size_t CleaningReport::dropped_total() const {
  std::size_t total = 0;
  for (const auto& [reason, n] : dropped_by_reason) total += n;
  return total;
}

namespace {

// Sequential reader over one log line.
class LineCursor {
 public:
  explicit LineCursor(std::string_view line) : s_(line) {}

  bool at_end() const { return pos_ >= s_.size(); }

  // Exactly one space separates fields.
  bool expect_space() {
    if (pos_ < s_.size() && s_[pos_] == ' ') {
      ++pos_;
      return true;
    }
    return false;
  }

  std::optional<std::string_view> bare_token() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != ' ') ++pos_;
    if (pos_ == start) return std::nullopt;
    return s_.substr(start, pos_ - start);
  }

  std::optional<std::string_view> bracketed() {
    if (pos_ >= s_.size() || s_[pos_] != '[') return std::nullopt;
    const std::size_t close = s_.find(']', pos_ + 1);
    if (close == std::string_view::npos) return std::nullopt;
    auto out = s_.substr(pos_ + 1, close - pos_ - 1);
    pos_ = close + 1;
    return out;
  }

  // Raw contents of a double-quoted field; backslash escapes are kept as
  // logged so the line can be reproduced.
  std::optional<std::string_view> quoted() {
    if (pos_ >= s_.size() || s_[pos_] != '"') return std::nullopt;
    std::size_t i = pos_ + 1;
    while (i < s_.size()) {
      if (s_[i] == '\\' && i + 1 < s_.size()) {
        i += 2;
        continue;
      }
      if (s_[i] == '"') {
        auto out = s_.substr(pos_ + 1, i - pos_ - 1);
        pos_ = i + 1;
        return out;
      }
      ++i;
    }
    return std::nullopt;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

std::optional<std::string> dash_is_absent(std::string_view v) {
  if (v == "-") return std::nullopt;
  return std::string(v);
}

bool is_method_token(std::string_view m) {
  return !m.empty() && std::all_of(m.begin(), m.end(), [](unsigned char c) {
    return std::isalpha(c) || c == '-' || c == '_';
  });
}

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

ParseError fail(std::size_t line_no, std::string reason) {
  return ParseError{line_no, std::move(reason)};
}

}  // namespace

std::string normalize_path(std::string_view target) {
  std::string_view path = target;
  const auto scheme = path.find("://");
  if (scheme != std::string_view::npos && scheme > 0 &&
      path.substr(0, scheme).find('/') == std::string_view::npos) {
    const auto slash = path.find('/', scheme + 3);
    path = slash == std::string_view::npos ? std::string_view("/") : path.substr(slash);
  }
  if (path.empty() || path.front() != '/') return {};
  while (path.size() > 1 && path.back() == '/') path.remove_suffix(1);
  return std::string(path);
}

ParseResult parse_line(std::string_view line, LogDialect dialect, std::size_t line_no) {
  LineCursor cur(line);
  LogEntry e;
  e.line_no = line_no;

  auto host = cur.bare_token();
  if (!host) return fail(line_no, "missing client host");
  e.client_host = std::string(*host);

  if (!cur.expect_space()) return fail(line_no, "missing ident");
  auto ident = cur.bare_token();
  if (!ident) return fail(line_no, "missing ident");
  e.ident = dash_is_absent(*ident);

  if (!cur.expect_space()) return fail(line_no, "missing authuser");
  auto user = cur.bare_token();
  if (!user) return fail(line_no, "missing authuser");
  e.authuser = dash_is_absent(*user);

  if (!cur.expect_space()) return fail(line_no, "missing timestamp");
  auto ts_text = cur.bracketed();
  if (!ts_text) return fail(line_no, "missing timestamp");
  auto ts = parse_clf_timestamp(*ts_text);
  if (!ts) return fail(line_no, "bad timestamp '" + std::string(*ts_text) + "'");
  e.timestamp = *ts;

  if (!cur.expect_space()) return fail(line_no, "missing request");
  auto request = cur.quoted();
  if (!request) return fail(line_no, "missing request");
  {
    std::vector<std::string_view> parts;
    std::string_view r = *request;
    std::size_t start = 0;
    while (start <= r.size()) {
      const auto sp = r.find(' ', start);
      const auto end = sp == std::string_view::npos ? r.size() : sp;
      parts.push_back(r.substr(start, end - start));
      if (sp == std::string_view::npos) break;
      start = sp + 1;
    }
    if (parts.size() < 2 || parts.size() > 3) return fail(line_no, "bad request line");
    if (!is_method_token(parts[0])) return fail(line_no, "bad method");
    e.method = std::string(parts[0]);
    std::string_view target = parts[1];
    const auto q = target.find('?');
    if (q != std::string_view::npos) {
      e.query = std::string(target.substr(q + 1));
      target = target.substr(0, q);
    }
    e.path = normalize_path(target);
    if (e.path.empty()) return fail(line_no, "request target is not a path");
    if (parts.size() == 3) {
      if (parts[2].empty()) return fail(line_no, "bad protocol");
      e.protocol = std::string(parts[2]);
    }
  }

  if (!cur.expect_space()) return fail(line_no, "missing status");
  auto status = cur.bare_token();
  if (!status || status->size() != 3 || !parse_int(*status, e.status) || e.status < 100 ||
      e.status > 599)
    return fail(line_no, "bad status");

  if (!cur.expect_space()) return fail(line_no, "missing bytes");
  auto bytes = cur.bare_token();
  if (!bytes) return fail(line_no, "missing bytes");
  if (*bytes != "-") {
    std::int64_t b = 0;
    if (!parse_int(*bytes, b) || b < 0) return fail(line_no, "bad bytes");
    e.bytes = b;
  }

  if (dialect == LogDialect::kCombined) {
    if (!cur.expect_space()) return fail(line_no, "missing referrer");
    auto ref = cur.quoted();
    if (!ref) return fail(line_no, "missing referrer");
    e.referrer = dash_is_absent(*ref);
    if (!cur.expect_space()) return fail(line_no, "missing user agent");
    auto ua = cur.quoted();
    if (!ua) return fail(line_no, "missing user agent");
    e.user_agent = dash_is_absent(*ua);
  }

  if (!cur.at_end()) return fail(line_no, "trailing characters");
  return e;
}

std::optional<LogDialect> probe_dialect(std::string_view first_line) {
  if (parse_line(first_line, LogDialect::kCombined)) return LogDialect::kCombined;
  if (parse_line(first_line, LogDialect::kCommon)) return LogDialect::kCommon;
  return std::nullopt;
}

std::string format_line(const LogEntry& e, LogDialect dialect) {
  std::string out;
  out.reserve(160);
  out += e.client_host;
  out += ' ';
  out += e.ident.value_or("-");
  out += ' ';
  out += e.authuser.value_or("-");
  out += " [";
  out += format_clf_timestamp(e.timestamp);
  out += "] \"";
  out += e.method;
  out += ' ';
  out += e.path;
  if (e.query) {
    out += '?';
    out += *e.query;
  }
  if (!e.protocol.empty()) {
    out += ' ';
    out += e.protocol;
  }
  out += "\" ";
  out += std::to_string(e.status);
  out += ' ';
  out += e.bytes ? std::to_string(*e.bytes) : std::string("-");
  if (dialect == LogDialect::kCombined) {
    out += " \"";
    out += e.referrer.value_or("-");
    out += "\" \"";
    out += e.user_agent.value_or("-");
    out += '"';
  }
  return out;
}

CleanResult clean(std::span<const LogEntry> entries, const CleaningRules& rules) {
  std::set<std::string> robot_hosts;
  for (const auto& e : entries) {
    if (e.path == rules.robots_path) robot_hosts.insert(e.client_host);
  }

  std::vector<std::string> agents;
  for (const auto& a : rules.robot_agents) agents.push_back(lower(a));
  std::vector<std::string> extensions;
  for (const auto& x : rules.dropped_extensions) extensions.push_back(lower(x));

  auto failing_rule = [&](const LogEntry& e) -> std::optional<DropReason> {
    if (std::find(rules.allowed_methods.begin(), rules.allowed_methods.end(), e.method) ==
        rules.allowed_methods.end())
      return DropReason::kMethod;
    if (std::find(rules.allowed_status.begin(), rules.allowed_status.end(), e.status) ==
        rules.allowed_status.end())
      return DropReason::kStatus;

    const auto last = e.path.rfind('/');
    const std::string_view segment = std::string_view(e.path).substr(last + 1);
    const auto dot = segment.rfind('.');
    if (dot != std::string_view::npos) {
      const std::string ext = lower(segment.substr(dot + 1));
      if (std::find(extensions.begin(), extensions.end(), ext) != extensions.end())
        return DropReason::kExtension;
    }

    if (robot_hosts.count(e.client_host)) return DropReason::kRobot;
    if (e.user_agent) {
      const std::string ua = lower(*e.user_agent);
      for (const auto& a : agents) {
        if (!a.empty() && ua.find(a) != std::string::npos) return DropReason::kRobot;
      }
    }
    return std::nullopt;
  };

  CleanResult result;
  result.report.input_count = entries.size();
  for (const auto& e : entries) {
    if (auto reason = failing_rule(e)) {
      ++result.report.dropped_by_reason[*reason];
    } else {
      result.entries.push_back(e);
    }
  }
  result.report.retained_count = result.entries.size();
  return result;
}

CleanResult clean(const ParsedLog& log, const CleaningRules& rules) {
  CleanResult result = clean(std::span<const LogEntry>(log.entries), rules);
  result.report.input_count += log.errors.size();
  if (!log.errors.empty())
    result.report.dropped_by_reason[DropReason::kMalformed] += log.errors.size();
  return result;
}

ParsedLog parse_lines(std::span<const std::string> lines, std::optional<LogDialect> dialect) {
  ParsedLog log;
  if (!dialect) {
    bool any = false;
    for (const auto& line : lines) {
      if (line.empty()) continue;
      any = true;
      dialect = probe_dialect(line);
      if (dialect) break;
    }
    if (any && !dialect)
      throw InputError("cannot determine log dialect: no line matches the common or "
                       "combined format");
  }
  log.dialect = dialect.value_or(LogDialect::kCommon);

  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    ++log.line_count;
    auto r = parse_line(lines[i], log.dialect, i + 1);
    if (r) {
      log.entries.push_back(std::move(r.entry()));
    } else {
      log.errors.push_back(r.error());
    }
  }
  return log;
}

}  // namespace sessionlens
