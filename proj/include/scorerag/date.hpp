/*
 * Copyright 2026 The ScoreRAG Authors
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
#include <compare>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "scorerag/error.hpp"
#include "scorerag/text.hpp"

namespace scorerag {

/// Calendar date, rendered as ISO-8601 "YYYY-MM-DD".
class Date {
 public:
  constexpr Date() = default;
  constexpr explicit Date(std::chrono::year_month_day ymd) : ymd_(ymd) {}

  static Date of(int y, unsigned m, unsigned d) {
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                    std::chrono::day{d}};
    if (!ymd.ok()) {
      fail(ErrorKind::InvalidInput, "invalid calendar date " + std::to_string(y) +
                                        "-" + std::to_string(m) + "-" +
                                        std::to_string(d));
    }
    return Date(ymd);
  }

  /// Strict "YYYY-MM-DD", the corpus file format.
  static Date parse_iso(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') {
      fail(ErrorKind::InvalidInput, "expected YYYY-MM-DD, got '" + std::string(s) + "'");
    }
    auto digits = [&](std::size_t from, std::size_t len) {
      int v = 0;
      for (std::size_t i = from; i < from + len; ++i) {
        if (s[i] < '0' || s[i] > '9') {
          fail(ErrorKind::InvalidInput, "expected YYYY-MM-DD, got '" + std::string(s) + "'");
        }
        v = v * 10 + (s[i] - '0');
      }
      return v;
    };
    return of(digits(0, 4), static_cast<unsigned>(digits(5, 2)),
              static_cast<unsigned>(digits(8, 2)));
  }

  /// Lenient parse used at ingest: accepts "2024-2-1", "2024/02/01",
  /// "2024.02.01", "2024年2月1日" and ISO timestamps ("2024-02-01T08:00Z").
  static std::optional<Date> parse_lenient(std::string_view raw) {
    const std::string s = text::fold_fullwidth(raw);
    int parts[3] = {0, 0, 0};
    int idx = 0;
    int ndigits = 0;
    for (std::size_t i = 0; i <= s.size() && idx < 3; ++i) {
      const bool digit = i < s.size() && s[i] >= '0' && s[i] <= '9';
      if (digit) {
        if (ndigits >= 4) return std::nullopt;
        parts[idx] = parts[idx] * 10 + (s[i] - '0');
        ++ndigits;
        continue;
      }
      if (ndigits == 0) {
        if (i < s.size() && idx == 0 && text::is_space(static_cast<unsigned char>(s[i]))) continue;
        return std::nullopt;
      }
      if (idx == 0 && ndigits != 4) return std::nullopt;
      ++idx;
      ndigits = 0;
      if (idx == 3) break;
      // Separator between fields: '-', '/', '.', or the CJK 年/月 markers.
      if (i >= s.size()) return std::nullopt;
      if (s[i] == '-' || s[i] == '/' || s[i] == '.') continue;
      if (s.compare(i, 3, "年") == 0 || s.compare(i, 3, "月") == 0) {
        i += 2;
        continue;
      }
      return std::nullopt;
    }
    if (idx != 3) return std::nullopt;
    std::chrono::year_month_day ymd{std::chrono::year{parts[0]},
                                    std::chrono::month{static_cast<unsigned>(parts[1])},
                                    std::chrono::day{static_cast<unsigned>(parts[2])}};
    if (!ymd.ok()) return std::nullopt;
    return Date(ymd);
  }

  int year() const { return static_cast<int>(ymd_.year()); }
  unsigned month() const { return static_cast<unsigned>(ymd_.month()); }
  unsigned day() const { return static_cast<unsigned>(ymd_.day()); }

  std::string iso() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year(), month(), day());
    return buf;
  }

  friend bool operator==(const Date& a, const Date& b) { return a.ymd_ == b.ymd_; }
  friend auto operator<=>(const Date& a, const Date& b) { return a.ymd_ <=> b.ymd_; }

 private:
  std::chrono::year_month_day ymd_{std::chrono::year{1970}, std::chrono::January,
                                   std::chrono::day{1}};
};

}  // namespace scorerag
