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

#include "sessionlens/timestamp.hpp"

#include <array>
#include <chrono>
#include <cstdio>

namespace sessionlens {
namespace {

constexpr std::array<std::string_view, 12> kMonths = {
    "Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

bool read_digits(std::string_view s, std::size_t pos, std::size_t len, int& out) {
  int v = 0;
  for (std::size_t i = pos; i < pos + len; ++i) {
    char c = s[i];
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  out = v;
  return true;
}

std::int64_t local_to_utc(int year, unsigned month, unsigned day, int hour, int minute,
                          int second, int offset_minutes) {
  using namespace std::chrono;
  const sys_days days{std::chrono::year{year} / std::chrono::month{month} / std::chrono::day{day}};
  const std::int64_t local = static_cast<std::int64_t>(days.time_since_epoch().count()) * 86400 +
                             hour * 3600 + minute * 60 + second;
  return local - static_cast<std::int64_t>(offset_minutes) * 60;
}

}  // namespace

std::optional<Timestamp> parse_clf_timestamp(std::string_view s) {
  // 01/Feb/2011:10:00:00 +0530
  if (s.size() != 26) return std::nullopt;
  if (s[2] != '/' || s[6] != '/' || s[11] != ':' || s[14] != ':' || s[17] != ':' ||
      s[20] != ' ')
    return std::nullopt;

  int day = 0, year = 0, hour = 0, minute = 0, second = 0, oh = 0, om = 0;
  if (!read_digits(s, 0, 2, day) || !read_digits(s, 7, 4, year) ||
      !read_digits(s, 12, 2, hour) || !read_digits(s, 15, 2, minute) ||
      !read_digits(s, 18, 2, second) || !read_digits(s, 22, 2, oh) ||
      !read_digits(s, 24, 2, om))
    return std::nullopt;

  unsigned month = 0;
  const std::string_view mon = s.substr(3, 3);
  for (unsigned i = 0; i < kMonths.size(); ++i) {
    if (kMonths[i] == mon) month = i + 1;
  }
  if (month == 0) return std::nullopt;

  const char sign = s[21];
  if (sign != '+' && sign != '-') return std::nullopt;
  if (hour > 23 || minute > 59 || second > 60 || oh > 23 || om > 59) return std::nullopt;

  const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                        std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok()) return std::nullopt;

  const int offset = (sign == '-' ? -1 : 1) * (oh * 60 + om);
  return Timestamp{local_to_utc(year, month, static_cast<unsigned>(day), hour, minute,
                                second, offset),
                   offset};
}

std::string format_clf_timestamp(const Timestamp& ts) {
  using namespace std::chrono;
  const std::int64_t local = ts.utc_seconds + static_cast<std::int64_t>(ts.offset_minutes) * 60;
  std::int64_t days = local / 86400;
  std::int64_t secs = local % 86400;
  if (secs < 0) {
    secs += 86400;
    days -= 1;
  }
  const year_month_day ymd{sys_days{std::chrono::days{days}}};
  const int off = ts.offset_minutes < 0 ? -ts.offset_minutes : ts.offset_minutes;

  char buf[40];
  std::snprintf(buf, sizeof buf, "%02u/%s/%04d:%02d:%02d:%02d %c%02d%02d",
                static_cast<unsigned>(ymd.day()),
                kMonths[static_cast<unsigned>(ymd.month()) - 1].data(),
                static_cast<int>(ymd.year()), static_cast<int>(secs / 3600),
                static_cast<int>((secs / 60) % 60), static_cast<int>(secs % 60),
                ts.offset_minutes < 0 ? '-' : '+', off / 60, off % 60);
  return buf;
}

Timestamp make_timestamp(int year, unsigned month, unsigned day, int hour, int minute,
                         int second, int offset_minutes) {
  return Timestamp{local_to_utc(year, month, day, hour, minute, second, offset_minutes),
                   offset_minutes};
}

}  // namespace sessionlens
