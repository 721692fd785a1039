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

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "newslens/corpus.hpp"
#include "newslens/entities.hpp"
#include "newslens/error.hpp"
#include "newslens/time.hpp"

namespace newslens {

/// Buckets with fewer mentions than this are flagged as low support.
inline constexpr std::size_t kLowSupportMentions = 5;

/// Positive minus negative class probability, in [-1, 1].
inline double mention_score(double p_pos, double p_neu, double p_neg) {
  auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!in_unit(p_pos) || !in_unit(p_neu) || !in_unit(p_neg)) {
    throw InputError("sentiment probabilities must lie in [0, 1]");
  }
  if (std::abs(p_pos + p_neu + p_neg - 1.0) > kProbabilitySumTolerance) {
    throw InputError("sentiment probabilities must sum to 1");
  }
  return p_pos - p_neg;
}

inline double mention_score(const SentimentProbs& p) { return mention_score(p.pos, p.neu, p.neg); }

enum class Granularity { weekly, monthly };

inline std::string_view to_string(Granularity g) { return g == Granularity::weekly ? "weekly" : "monthly"; }

/// Time bucket: the Monday day number for weeks, the month ordinal for months.
struct Bucket {
  Granularity granularity = Granularity::weekly;
  std::int64_t key = 0;

  static Bucket of(UtcTime t, Granularity g) {
    return g == Granularity::weekly ? Bucket{g, IsoWeek::of(t).monday} : Bucket{g, Month::of(t).ordinal()};
  }
  std::string label() const {
    return granularity == Granularity::weekly ? IsoWeek{key}.label() : Month::from_ordinal(key).label();
  }
};

struct SentimentPoint {
  Bucket bucket;
  double mean_score = 0.0;
  std::size_t mention_count = 0;
  bool low_support = false;
};

struct EntitySentimentSeries {
  std::string link_id;
  Language language = Language::fr;
  Granularity granularity = Granularity::weekly;
  std::vector<SentimentPoint> points;
};

/// Mean mention score per bucket for one linked entity in one language.
/// Mentions without sentiment or without this link are ignored.
inline EntitySentimentSeries entity_series(const std::vector<MentionRecord>& mentions,
                                           const CorpusStore& store, const std::string& link_id,
                                           Language language, Granularity granularity) {
  std::map<std::int64_t, std::pair<double, std::size_t>> sums;
  for (const auto& m : mentions) {
    if (!m.sentiment || !m.link_id || *m.link_id != link_id) continue;
    const Article& a = store.at(m.article_id);
    if (a.language != language) continue;
    auto& s = sums[Bucket::of(a.published_at, granularity).key];
    s.first += mention_score(*m.sentiment);
    ++s.second;
  }
  if (sums.empty()) {
    throw InputError("no scored mentions for entity '" + link_id + "' in " +
                     std::string(to_code(language)));
  }
  EntitySentimentSeries series{link_id, language, granularity, {}};
  for (const auto& [key, s] : sums) {
    series.points.push_back({Bucket{granularity, key}, s.first / static_cast<double>(s.second), s.second,
                             s.second < kLowSupportMentions});
  }
  return series;
}

}  // namespace newslens
