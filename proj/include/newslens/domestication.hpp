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
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "newslens/entities.hpp"
#include "newslens/language.hpp"
#include "newslens/time.hpp"

namespace newslens {

/// Cue bonus added to the Swiss share before clipping at 1.
inline constexpr double kCueBonus = 0.1;

struct AnchorCounts {
  std::size_t swiss = 0;
  std::size_t neighbor = 0;
  std::size_t other = 0;

  std::size_t total() const { return swiss + neighbor + other; }

  void add(AnchorClass c) {
    switch (c) {
      case AnchorClass::swiss: ++swiss; break;
      case AnchorClass::neighbor: ++neighbor; break;
      case AnchorClass::foreign_other: ++other; break;
      case AnchorClass::unanchored: break;
    }
  }
};

struct ArticleProfile {
  std::string article_id;
  Language language = Language::fr;
  double p_swiss = 0.0;
  double p_neighbor = 0.0;
  double p_other = 0.0;
  std::size_t anchored_mention_count = 0;
  bool cue_applied = false;
};

/// Shares of anchored mentions per class. With a cue, p_swiss gains the
/// bonus (clipped at 1) and the rest of the mass is split between neighbour
/// and other in their original ratio. Returns nothing when no mention is
/// anchored.
inline std::optional<ArticleProfile> article_profile(const std::string& article_id, Language language,
                                                     const AnchorCounts& counts, bool cue_flag) {
  const std::size_t total = counts.total();
  if (total == 0) return std::nullopt;
  const double n = static_cast<double>(total);
  ArticleProfile p{article_id, language, static_cast<double>(counts.swiss) / n,
                   static_cast<double>(counts.neighbor) / n, static_cast<double>(counts.other) / n,
                   total, cue_flag};
  if (cue_flag) {
    p.p_swiss = std::min(p.p_swiss + kCueBonus, 1.0);
    const double rest = 1.0 - p.p_swiss;
    const std::size_t foreign = counts.neighbor + counts.other;
    if (foreign == 0) {
      p.p_swiss = 1.0;
      p.p_neighbor = 0.0;
      p.p_other = 0.0;
    } else {
      p.p_neighbor = rest * static_cast<double>(counts.neighbor) / static_cast<double>(foreign);
      p.p_other = rest * static_cast<double>(counts.other) / static_cast<double>(foreign);
    }
  }
  return p;
}

struct LpsrRecord {
  std::string article_id;
  Language language = Language::fr;
  std::size_t m_prox = 0;
  std::size_t m_other = 0;
  double lpsr = 0.0;
};

/// Smoothed natural-log ratio of proximate-neighbour to other foreign
/// mentions. Swiss mentions count towards neither side.
inline double lpsr(std::size_t m_prox, std::size_t m_other) {
  return std::log((static_cast<double>(m_prox) + 1.0) / (static_cast<double>(m_other) + 1.0));
}

inline LpsrRecord article_lpsr(const std::string& article_id, Language language,
                               const AnchorCounts& counts) {
  return {article_id, language, counts.neighbor, counts.other, lpsr(counts.neighbor, counts.other)};
}

/// One week's unweighted mean of N article-level values.
template <std::size_t N>
struct WeeklyMean {
  IsoWeek week;
  std::array<double, N> mean{};
  std::size_t article_count = 0;
};

/// Groups article-level values by ISO week and averages them. Weeks without
/// articles are omitted; output weeks are strictly increasing.
template <std::size_t N>
std::vector<WeeklyMean<N>> weekly_aggregate(
    const std::vector<std::pair<IsoWeek, std::array<double, N>>>& observations) {
  std::map<IsoWeek, std::pair<std::array<double, N>, std::size_t>> sums;
  for (const auto& [week, values] : observations) {
    auto& s = sums[week];
    for (std::size_t i = 0; i < N; ++i) s.first[i] += values[i];
    ++s.second;
  }
  std::vector<WeeklyMean<N>> out;
  for (const auto& [week, s] : sums) {
    WeeklyMean<N> w{week, {}, s.second};
    for (std::size_t i = 0; i < N; ++i) w.mean[i] = s.first[i] / static_cast<double>(s.second);
    out.push_back(w);
  }
  return out;
}

struct WeeklyProfile {
  Language language = Language::fr;
  IsoWeek week;
  double p_swiss = 0.0;
  double p_neighbor = 0.0;
  double p_other = 0.0;
  std::size_t article_count = 0;
};

struct WeeklyLpsr {
  Language language = Language::fr;
  IsoWeek week;
  double mean_lpsr = 0.0;
  std::size_t article_count = 0;
};

/// `timestamp(article_id)` gives each article's publication time.
template <typename TimeLookup>
std::vector<WeeklyProfile> weekly_profiles(const std::vector<ArticleProfile>& profiles,
                                           Language language, TimeLookup timestamp) {
  std::vector<std::pair<IsoWeek, std::array<double, 3>>> obs;
  for (const auto& p : profiles) {
    if (p.language != language) continue;
    obs.push_back({IsoWeek::of(timestamp(p.article_id)), {p.p_swiss, p.p_neighbor, p.p_other}});
  }
  std::vector<WeeklyProfile> out;
  for (const auto& w : weekly_aggregate<3>(obs)) {
    out.push_back({language, w.week, w.mean[0], w.mean[1], w.mean[2], w.article_count});
  }
  return out;
}

enum class LpsrMode { article_mean, pooled };

/// Weekly LPSR: the mean of article LPSR values, or (pooled) the LPSR of the
/// week's summed counts.
template <typename TimeLookup>
std::vector<WeeklyLpsr> weekly_lpsr(const std::vector<LpsrRecord>& records, Language language,
                                    TimeLookup timestamp, LpsrMode mode = LpsrMode::article_mean) {
  std::vector<std::pair<IsoWeek, std::array<double, 3>>> obs;
  for (const auto& r : records) {
    if (r.language != language) continue;
    obs.push_back({IsoWeek::of(timestamp(r.article_id)),
                   {r.lpsr, static_cast<double>(r.m_prox), static_cast<double>(r.m_other)}});
  }
  std::vector<WeeklyLpsr> out;
  for (const auto& w : weekly_aggregate<3>(obs)) {
    double value = w.mean[0];
    if (mode == LpsrMode::pooled) {
      const double n = static_cast<double>(w.article_count);
      value = lpsr(static_cast<std::size_t>(std::llround(w.mean[1] * n)),
                   static_cast<std::size_t>(std::llround(w.mean[2] * n)));
    }
    out.push_back({language, w.week, value, w.article_count});
  }
  return out;
}

}  // namespace newslens
