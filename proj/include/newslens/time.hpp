// Copyright 2026 The newslens Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "newslens/error.hpp"

namespace newslens {

using UtcTime = std::chrono::sys_seconds;

struct CivilDate {
  int year = 1970;
  unsigned month = 1;
  unsigned day = 1;
};

// Howard Hinnant's civil calendar algorithms (proleptic Gregorian).
inline constexpr std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2 ? 1 : 0;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m > 2 ? m - 3 : m + 9) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline constexpr CivilDate civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const auto doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp < 10 ? mp + 3 : mp - 9;
  return {static_cast<int>(y + (m <= 2 ? 1 : 0)), m, d};
}

inline constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  return a / b - ((a % b != 0) && ((a < 0) != (b < 0)) ? 1 : 0);
}

inline std::int64_t day_number(UtcTime t) {
  return floor_div(t.time_since_epoch().count(), 86400);
}

/// Calendar month, UTC.
struct Month {
  int year = 1970;
  unsigned month = 1;

  static Month of(UtcTime t) {
    const CivilDate c = civil_from_days(day_number(t));
    return {c.year, c.month};
  }
  std::int64_t ordinal() const { return static_cast<std::int64_t>(year) * 12 + (month - 1); }
  static Month from_ordinal(std::int64_t ord) {
    return {static_cast<int>(floor_div(ord, 12)), static_cast<unsigned>(ord - floor_div(ord, 12) * 12) + 1};
  }
  std::string label() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u", year, month);
    return buf;
  }
  friend auto operator<=>(const Month& a, const Month& b) { return a.ordinal() <=> b.ordinal(); }
  friend bool operator==(const Month& a, const Month& b) = default;
};

/// ISO-8601 week, identified by the day number of its Monday.
struct IsoWeek {
  std::int64_t monday = 0;

  static IsoWeek of_day(std::int64_t day) {
    // 1970-01-01 was a Thursday; ISO weekday Monday=0..Sunday=6.
    const std::int64_t weekday = (day + 3) - 7 * floor_div(day + 3, 7);
    return {day - weekday};
  }
  static IsoWeek of(UtcTime t) { return of_day(day_number(t)); }

  /// Week-numbering year and week number (1..53).
  std::pair<int, unsigned> year_week() const {
    const std::int64_t thursday = monday + 3;
    const int year = civil_from_days(thursday).year;
    const std::int64_t jan1 = days_from_civil(year, 1, 1);
    return {year, static_cast<unsigned>((thursday - jan1) / 7 + 1)};
  }
  std::string label() const {
    const auto [y, w] = year_week();
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-W%02u", y, w);
    return buf;
  }
  IsoWeek plus(std::int64_t weeks) const { return {monday + 7 * weeks}; }
  std::int64_t weeks_since(IsoWeek other) const { return (monday - other.monday) / 7; }

  friend auto operator<=>(const IsoWeek&, const IsoWeek&) = default;
};

/// Monday of ISO week `week` in week-numbering year `year`.
inline IsoWeek iso_week_from(int year, unsigned week) {
  const IsoWeek first = IsoWeek::of_day(days_from_civil(year, 1, 4));
  return first.plus(static_cast<std::int64_t>(week) - 1);
}

namespace detail {
inline bool read_digits(std::string_view s, std::size_t pos, std::size_t n, int& out) {
  if (pos + n > s.size()) return false;
  int v = 0;
  for (std::size_t i = pos; i < pos + n; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
    v = v * 10 + (s[i] - '0');
  }
  out = v;
  return true;
}
}  // namespace detail

/// Parses "YYYY-MM-DDTHH:MM:SS[.frac][Z|+HH:MM|-HH:MM]" (a space may replace
/// 'T'; a missing zone means UTC). Fractional seconds are truncated.
inline std::optional<UtcTime> parse_iso8601(std::string_view s) {
  int y, mo, d, h, mi, sec;
  if (!detail::read_digits(s, 0, 4, y) || s.size() < 19 || s[4] != '-' ||
      !detail::read_digits(s, 5, 2, mo) || s[7] != '-' || !detail::read_digits(s, 8, 2, d) ||
      (s[10] != 'T' && s[10] != ' ') || !detail::read_digits(s, 11, 2, h) || s[13] != ':' ||
      !detail::read_digits(s, 14, 2, mi) || s[16] != ':' || !detail::read_digits(s, 17, 2, sec)) {
    return std::nullopt;
  }
  if (mo < 1 || mo > 12 || d < 1 || h > 23 || mi > 59 || sec > 60) return std::nullopt;
  const CivilDate back = civil_from_days(days_from_civil(y, mo, d));
  if (back.month != static_cast<unsigned>(mo) || back.day != static_cast<unsigned>(d)) {
    return std::nullopt;
  }
  std::size_t pos = 19;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    const std::size_t start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == start) return std::nullopt;
  }
  std::int64_t offset = 0;
  if (pos < s.size()) {
    if (s[pos] == 'Z' || s[pos] == 'z') {
      ++pos;
    } else if (s[pos] == '+' || s[pos] == '-') {
      const int sign = s[pos] == '+' ? 1 : -1;
      int oh, om;
      if (!detail::read_digits(s, pos + 1, 2, oh)) return std::nullopt;
      std::size_t mpos = pos + 3;
      if (mpos < s.size() && s[mpos] == ':') ++mpos;
      if (!detail::read_digits(s, mpos, 2, om)) return std::nullopt;
      offset = sign * (oh * 3600 + om * 60);
      pos = mpos + 2;
    }
  }
  if (pos != s.size()) return std::nullopt;
  const std::int64_t secs =
      days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + sec - offset;
  return UtcTime{std::chrono::seconds{secs}};
}

inline UtcTime require_iso8601(std::string_view s) {
  if (auto t = parse_iso8601(s)) return *t;
  throw InputError("invalid ISO-8601 timestamp '" + std::string(s) + "'");
}

/// Parses "YYYY-MM-DD" as midnight UTC.
inline std::optional<UtcTime> parse_date(std::string_view s) {
  int y, m, d;
  if (s.size() != 10 || !detail::read_digits(s, 0, 4, y) || s[4] != '-' ||
      !detail::read_digits(s, 5, 2, m) || s[7] != '-' || !detail::read_digits(s, 8, 2, d)) {
    return std::nullopt;
  }
  if (m < 1 || m > 12 || d < 1) return std::nullopt;
  const CivilDate back = civil_from_days(days_from_civil(y, m, d));
  if (back.month != static_cast<unsigned>(m) || back.day != static_cast<unsigned>(d)) {
    return std::nullopt;
  }
  return UtcTime{std::chrono::seconds{days_from_civil(y, m, d) * 86400}};
}

inline std::string format_iso8601(UtcTime t) {
  const std::int64_t secs = t.time_since_epoch().count();
  const std::int64_t day = floor_div(secs, 86400);
  const std::int64_t rem = secs - day * 86400;
  const CivilDate c = civil_from_days(day);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", c.year, c.month, c.day,
                static_cast<int>(rem / 3600), static_cast<int>(rem / 60 % 60),
                static_cast<int>(rem % 60));
  return buf;
}

inline std::string format_date(UtcTime t) {
  const CivilDate c = civil_from_days(day_number(t));
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", c.year, c.month, c.day);
  return buf;
}

/// Inclusive range of UTC instants.
struct DateRange {
  UtcTime start;
  UtcTime end;

  bool contains(UtcTime t) const { return t >= start && t <= end; }
  /// Number of calendar months touched by the range.
  std::int64_t month_count() const {
    if (end < start) return 0;
    return Month::of(end).ordinal() - Month::of(start).ordinal() + 1;
  }
};

}  // namespace newslens
