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

#include <array>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "newslens/corpus.hpp"
#include "newslens/error.hpp"
#include "newslens/language.hpp"
#include "newslens/text.hpp"
#include "newslens/time.hpp"

namespace newslens {

enum class Metric { ttr = 0, density = 1, msl = 2 };

inline constexpr std::array<Metric, 3> kMetrics = {Metric::ttr, Metric::density, Metric::msl};

inline std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::ttr: return "ttr";
    case Metric::density: return "density";
    case Metric::msl: return "msl";
  }
  return "?";
}

/// Per-language closed-class word list and abbreviation list.
struct LexicalResources {
  TermList function_words;
  TermList abbreviations;
};

struct LexicalRecord {
  std::string article_id;
  Language language = Language::fr;
  Month month;
  std::size_t token_count = 0;
  std::size_t sentence_count = 0;
  std::array<double, 3> raw{};  // indexed by Metric
  std::array<double, 3> z{};
  double composite_z = 0.0;

  double ttr() const { return raw[0]; }
  double lexical_density() const { return raw[1]; }
  double msl() const { return raw[2]; }
};

/// Raw type-token ratio, content-word share and mean sentence length of the
/// article body. Content words are tokens absent from the function-word list.
inline LexicalRecord article_metrics(const Article& article, const LexicalResources& resources) {
  const auto tokens = tokenize(article.body);
  if (tokens.empty()) throw InputError("article '" + article.id + "': no tokens");
  std::size_t sentences = 0;
  for (const auto& s : split_sentences(article.body, resources.abbreviations)) {
    if (!tokenize(s).empty()) ++sentences;
  }
  if (sentences == 0) throw InputError("article '" + article.id + "': no sentences");

  const std::set<std::string> types(tokens.begin(), tokens.end());
  std::size_t content = 0;
  for (const auto& t : tokens) {
    if (!resources.function_words.contains(t)) ++content;
  }
  const double n = static_cast<double>(tokens.size());
  LexicalRecord r;
  r.article_id = article.id;
  r.language = article.language;
  r.month = Month::of(article.published_at);
  r.token_count = tokens.size();
  r.sentence_count = sentences;
  r.raw = {static_cast<double>(types.size()) / n, static_cast<double>(content) / n,
           n / static_cast<double>(sentences)};
  return r;
}

struct LanguageBaseline {
  Language language = Language::fr;
  std::array<double, 3> mean{};
  /// Population standard deviation.
  std::array<double, 3> stddev{};
};

inline constexpr double kDegenerateSigma = 1e-12;

struct Standardized {
  std::vector<LexicalRecord> records;
  LanguageBaseline baseline;
};

/// Within-language z-scores with population sigma; a metric whose sigma is
/// below 1e-12 gets z = 0 everywhere. Fills composite_z as the mean of the
/// three z-scores.
inline Standardized standardize(std::vector<LexicalRecord> records) {
  if (records.size() < 2) throw InputError("standardize needs at least 2 records");
  const Language lang = records.front().language;
  for (const auto& r : records) {
    if (r.language != lang) throw InputError("standardize: records mix languages");
  }
  Standardized out;
  out.baseline.language = lang;
  const double n = static_cast<double>(records.size());
  for (std::size_t m = 0; m < 3; ++m) {
    double sum = 0;
    for (const auto& r : records) sum += r.raw[m];
    const double mean = sum / n;
    double ss = 0;
    for (const auto& r : records) ss += (r.raw[m] - mean) * (r.raw[m] - mean);
    const double sd = std::sqrt(ss / n);
    out.baseline.mean[m] = mean;
    out.baseline.stddev[m] = sd;
    for (auto& r : records) r.z[m] = sd < kDegenerateSigma ? 0.0 : (r.raw[m] - mean) / sd;
  }
  for (auto& r : records) r.composite_z = (r.z[0] + r.z[1] + r.z[2]) / 3.0;
  out.records = std::move(records);
  return out;
}

/// Percent deviation of one value from a positive baseline mean.
inline double relative_change(double value, double baseline_mean) {
  if (!(baseline_mean > 0)) throw InputError("relative change needs a positive baseline mean");
  return 100.0 * (value - baseline_mean) / baseline_mean;
}

struct RelativeChangeRecord {
  std::string article_id;
  Month month;
  std::array<double, 3> r{};
  double composite = 0.0;
};

inline std::vector<RelativeChangeRecord> relative_change(const std::vector<LexicalRecord>& records,
                                                         const LanguageBaseline& baseline) {
  for (double mu : baseline.mean) {
    if (!(mu > 0)) throw InputError("relative change needs positive baseline means");
  }
  std::vector<RelativeChangeRecord> out;
  out.reserve(records.size());
  for (const auto& rec : records) {
    RelativeChangeRecord rc{rec.article_id, rec.month, {}, 0.0};
    for (std::size_t m = 0; m < 3; ++m) rc.r[m] = relative_change(rec.raw[m], baseline.mean[m]);
    rc.composite = (rc.r[0] + rc.r[1] + rc.r[2]) / 3.0;
    out.push_back(rc);
  }
  return out;
}

struct MonthlyPoint {
  Month month;
  double raw = 0.0;
  double rolling3 = 0.0;
  std::size_t count = 0;
};

struct MonthlySeries {
  std::vector<MonthlyPoint> points;  // strictly increasing months
};

/// Unweighted monthly means, plus a centered three-month mean over the
/// calendar neighbours that are present.
inline MonthlySeries monthly_aggregate(const std::vector<std::pair<Month, double>>& observations) {
  std::map<std::int64_t, std::pair<double, std::size_t>> sums;
  for (const auto& [month, v] : observations) {
    auto& s = sums[month.ordinal()];
    s.first += v;
    ++s.second;
  }
  MonthlySeries series;
  for (const auto& [ord, s] : sums) {
    series.points.push_back({Month::from_ordinal(ord), s.first / static_cast<double>(s.second), 0.0,
                             s.second});
  }
  for (std::size_t i = 0; i < series.points.size(); ++i) {
    const std::int64_t ord = series.points[i].month.ordinal();
    double sum = series.points[i].raw;
    int n = 1;
    if (i > 0 && series.points[i - 1].month.ordinal() == ord - 1) {
      sum += series.points[i - 1].raw;
      ++n;
    }
    if (i + 1 < series.points.size() && series.points[i + 1].month.ordinal() == ord + 1) {
      sum += series.points[i + 1].raw;
      ++n;
    }
    series.points[i].rolling3 = sum / n;
  }
  return series;
}

/// Aggregates any record type by month through a projection.
template <typename Record, typename Projection>
MonthlySeries monthly_aggregate(const std::vector<Record>& records, Projection field) {
  std::vector<std::pair<Month, double>> obs;
  obs.reserve(records.size());
  for (const auto& r : records) obs.emplace_back(r.month, field(r));
  return monthly_aggregate(obs);
}

}  // namespace newslens
