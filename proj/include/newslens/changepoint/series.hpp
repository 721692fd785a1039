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

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "newslens/error.hpp"
#include "newslens/language.hpp"
#include "newslens/time.hpp"

namespace newslens::cpd {

/// Contiguous weekly series starting at `first_week`; empty weeks are zero.
struct WeeklySeries {
  std::string label;
  Language language = Language::fr;
  IsoWeek first_week;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  IsoWeek week_at(std::size_t i) const { return first_week.plus(static_cast<std::int64_t>(i)); }
};

/// Article counts per ISO week from the first to the last populated week.
inline WeeklySeries weekly_counts(const std::vector<UtcTime>& timestamps, std::string label = {},
                                  Language language = Language::fr) {
  if (timestamps.empty()) throw InputError("weekly_counts: empty subset");
  IsoWeek lo = IsoWeek::of(timestamps.front());
  IsoWeek hi = lo;
  for (UtcTime t : timestamps) {
    const IsoWeek w = IsoWeek::of(t);
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }
  WeeklySeries s{std::move(label), language, lo,
                 std::vector<double>(static_cast<std::size_t>(hi.weeks_since(lo)) + 1, 0.0)};
  for (UtcTime t : timestamps) s.values[static_cast<std::size_t>(IsoWeek::of(t).weeks_since(lo))] += 1.0;
  return s;
}

/// Centered moving average; the window shrinks at both edges.
inline std::vector<double> moving_average(std::span<const double> values, std::size_t window = 3) {
  if (window == 0 || window % 2 == 0) throw InputError("moving_average window must be odd");
  const std::size_t half = window / 2;
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(values.size() - 1, i + half);
    double sum = 0;
    for (std::size_t j = lo; j <= hi; ++j) sum += values[j];
    out[i] = sum / static_cast<double>(hi - lo + 1);
  }
  return out;
}

/// Degree-1 LOESS over x = 0..T-1 with tricube weights. Each local fit uses
/// the round(span*T) nearest points (at least 3); the bandwidth is the
/// distance to the farthest of them.
inline std::vector<double> loess_trend(std::span<const double> values, double span = 0.25) {
  const std::size_t n = values.size();
  if (n < 4) throw InputError("loess_trend needs at least 4 points");
  if (!(span > 0.0 && span <= 1.0)) throw InputError("loess span must be in (0, 1]");
  const auto q = std::clamp<std::size_t>(static_cast<std::size_t>(std::lround(span * static_cast<double>(n))),
                                         3, n);
  std::vector<double> out(n);
  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      dist[j] = std::abs(static_cast<double>(j) - static_cast<double>(i));
    }
    std::vector<double> sorted = dist;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(q - 1), sorted.end());
    const double h = sorted[q - 1];

    double sw = 0, sx = 0, sy = 0;
    std::vector<double> w(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double u = dist[j] / h;
      if (u >= 1.0) continue;
      const double t = 1.0 - u * u * u;
      w[j] = t * t * t;
      sw += w[j];
      sx += w[j] * static_cast<double>(j);
      sy += w[j] * values[j];
    }
    const double xbar = sx / sw;
    const double ybar = sy / sw;
    double sxx = 0, sxy = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (w[j] == 0.0) continue;
      const double dx = static_cast<double>(j) - xbar;
      sxx += w[j] * dx * dx;
      sxy += w[j] * dx * (values[j] - ybar);
    }
    // Only one point carries weight: the fit is that point.
    const double slope = sxx > 1e-12 ? sxy / sxx : 0.0;
    out[i] = ybar + slope * (static_cast<double>(i) - xbar);
  }
  return out;
}

}  // namespace newslens::cpd
