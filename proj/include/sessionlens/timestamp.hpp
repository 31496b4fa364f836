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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace sessionlens {

// An instant plus the UTC offset it was logged with. Ordering and equality
// look only at the instant; the offset is kept so the original text can be
// reproduced.
struct Timestamp {
  std::int64_t utc_seconds = 0;
  int offset_minutes = 0;

  friend bool operator==(const Timestamp& a, const Timestamp& b) {
    return a.utc_seconds == b.utc_seconds;
  }
  friend auto operator<=>(const Timestamp& a, const Timestamp& b) {
    return a.utc_seconds <=> b.utc_seconds;
  }

  // Same instant and same offset.
  bool identical(const Timestamp& other) const {
    return utc_seconds == other.utc_seconds && offset_minutes == other.offset_minutes;
  }
};

// Parses `dd/Mon/yyyy:HH:mm:ss +zzzz` exactly (26 characters, English month
// abbreviations, explicit sign on the offset).
std::optional<Timestamp> parse_clf_timestamp(std::string_view text);

// Inverse of parse_clf_timestamp, rendered in the stored offset.
std::string format_clf_timestamp(const Timestamp& ts);

// Builds a timestamp from a civil local time and offset. Used by the fixture
// generator and tests.
Timestamp make_timestamp(int year, unsigned month, unsigned day, int hour, int minute,
                         int second, int offset_minutes);

}  // namespace sessionlens
