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
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "newslens/csv.hpp"
#include "newslens/error.hpp"
#include "newslens/language.hpp"
#include "newslens/text.hpp"
#include "newslens/time.hpp"

namespace newslens {

/// Articles with fewer word tokens than this are faulty.
inline constexpr std::size_t kFaultyMinTokens = 25;
/// Sources at or above this faulty share are excluded.
inline constexpr double kFaultyExclusionRatio = 0.05;

struct Article {
  std::string id;
  std::string outlet;
  Language language = Language::fr;
  UtcTime published_at{};
  std::string title;
  std::string body;
  std::size_t token_count = 0;
  /// Language reported by an upstream detector, if the record carried one.
  std::optional<Language> detected_language;
  std::size_t source_line = 0;

  bool language_conflict() const {
    return detected_language.has_value() && *detected_language != language;
  }
  bool faulty() const {
    return body.find_first_not_of(" \t\r\n") == std::string::npos ||
           token_count < kFaultyMinTokens || language_conflict();
  }
};

struct Rejection {
  std::size_t record_line = 0;
  std::string reason_code;
};

struct IngestOptions {
  bool strip_boilerplate = true;
  /// A line is boilerplate when it occurs in at least this share of an
  /// outlet's articles...
  double boilerplate_min_share = 0.10;
  /// ...and in at least this many of them.
  std::size_t boilerplate_min_count = 3;
};

struct RemovedLine {
  std::string outlet;
  std::string line;
  std::size_t article_count = 0;
};

struct IngestReport {
  std::size_t accepted = 0;
  std::vector<Rejection> rejections;
  std::vector<RemovedLine> boilerplate;

  std::size_t count(std::string_view reason_prefix) const {
    return static_cast<std::size_t>(std::count_if(
        rejections.begin(), rejections.end(),
        [&](const Rejection& r) { return r.reason_code.rfind(reason_prefix, 0) == 0; }));
  }
};

/// Record rejected as faulty at ingest; kept so source quality can count it.
struct FaultyRecord {
  std::string outlet;
  UtcTime published_at{};
};

/// In-memory article store. Single writer during ingest, read-only afterwards.
class CorpusStore {
 public:
  bool contains(const std::string& id) const { return index_.count(id) != 0; }

  const Article* find(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &articles_[it->second];
  }

  const Article& at(const std::string& id) const {
    if (const Article* a = find(id)) return *a;
    throw InputError("unknown article id '" + id + "'");
  }

  /// Articles in ingest order.
  const std::vector<Article>& articles() const { return articles_; }

  std::vector<const Article*> by_language(Language lang) const {
    std::vector<const Article*> out;
    for (const auto& a : articles_) {
      if (a.language == lang) out.push_back(&a);
    }
    return out;
  }

  std::vector<std::string> outlets() const {
    std::set<std::string> names;
    for (const auto& a : articles_) names.insert(a.outlet);
    for (const auto& f : faulty_rejected_) names.insert(f.outlet);
    return {names.begin(), names.end()};
  }

  const std::vector<FaultyRecord>& faulty_rejected() const { return faulty_rejected_; }

  void add(Article article) {
    if (contains(article.id)) throw InputError("duplicate article id '" + article.id + "'");
    index_.emplace(article.id, articles_.size());
    articles_.push_back(std::move(article));
  }

  void add_faulty_rejection(FaultyRecord record) { faulty_rejected_.push_back(std::move(record)); }

  std::size_t size() const { return articles_.size(); }

 private:
  std::vector<Article> articles_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<FaultyRecord> faulty_rejected_;
};

namespace detail {

inline std::string clean_body(std::string body) {
  std::string out;
  out.reserve(body.size());
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] == '\r') {
      out += '\n';
      if (i + 1 < body.size() && body[i + 1] == '\n') ++i;
    } else {
      out += body[i];
    }
  }
  return out;
}

inline bool blank(std::string_view s) { return s.find_first_not_of(" \t\r\n") == std::string_view::npos; }

inline std::string_view trim_ascii(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string_view> split_lines(std::string_view s) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto pos = s.find('\n', start);
    if (pos == std::string_view::npos) {
      lines.push_back(s.substr(start));
      break;
    }
    lines.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return lines;
}

/// Parses one JSON line into an article; returns a reason code on failure.
inline std::variant<Article, std::string> parse_record(const std::string& line) {
  const auto j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::string("malformed:json");
  auto str_field = [&](const char* key) -> const std::string* {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string()) return nullptr;
    return it->get_ptr<const std::string*>();
  };
  const std::string* id = str_field("id");
  const std::string* outlet = str_field("outlet");
  const std::string* lang = str_field("language");
  const std::string* ts = str_field("published_at");
  const std::string* title = str_field("title");
  const std::string* body = str_field("body");
  if (!id || !outlet || !lang || !ts || !title || !body) return std::string("malformed:field");
  if (id->empty()) return std::string("malformed:empty_id");
  Article a;
  a.id = *id;
  a.outlet = *outlet;
  auto language = parse_language(*lang);
  if (!language) return std::string("malformed:language");
  a.language = *language;
  auto when = parse_iso8601(*ts);
  if (!when) return std::string("malformed:timestamp");
  a.published_at = *when;
  if (const std::string* detected = str_field("detected_language")) {
    auto d = parse_language(*detected);
    if (!d) return std::string("malformed:language");
    a.detected_language = *d;
  }
  a.title = *title;
  a.body = clean_body(*body);
  return a;
}

}  // namespace detail

struct BoilerplateResult {
  std::vector<Article> articles;
  std::vector<RemovedLine> removed;
};

/// Removes every line that occurs in at least `min_share` of the outlet's
/// articles and in at least `min_count` of them. Lines are compared after
/// trimming; blank lines are never boilerplate. Token counts are recomputed.
inline BoilerplateResult strip_boilerplate(std::vector<Article> outlet_articles,
                                           const IngestOptions& options = {}) {
  BoilerplateResult result;
  if (outlet_articles.empty()) return result;
  const std::string& outlet = outlet_articles.front().outlet;
  for (const auto& a : outlet_articles) {
    if (a.outlet != outlet) throw InputError("strip_boilerplate: articles span several outlets");
  }

  std::map<std::string, std::size_t> article_count;
  for (const auto& a : outlet_articles) {
    std::set<std::string_view> seen;
    for (auto line : detail::split_lines(a.body)) {
      line = detail::trim_ascii(line);
      if (!line.empty() && seen.insert(line).second) ++article_count[std::string(line)];
    }
  }

  const double n = static_cast<double>(outlet_articles.size());
  std::set<std::string, std::less<>> boilerplate;
  for (const auto& [line, count] : article_count) {
    if (count >= options.boilerplate_min_count &&
        static_cast<double>(count) >= options.boilerplate_min_share * n - 1e-9) {
      boilerplate.insert(line);
      result.removed.push_back({outlet, line, count});
    }
  }

  for (auto& a : outlet_articles) {
    if (!boilerplate.empty()) {
      std::string kept;
      bool first = true;
      for (auto line : detail::split_lines(a.body)) {
        if (boilerplate.count(detail::trim_ascii(line))) continue;
        if (!first) kept += '\n';
        kept.append(line);
        first = false;
      }
      const auto end = kept.find_last_not_of(" \t\n");
      kept.resize(end == std::string::npos ? 0 : end + 1);
      a.body = std::move(kept);
    }
    a.token_count = tokenize(a.body).size();
  }
  result.articles = std::move(outlet_articles);
  return result;
}

/// Reads line-delimited article records into `store`. Malformed and
/// duplicate records are skipped and reported; an unreadable file throws.
/// Boilerplate stripping runs per outlet over the records accepted by this
/// call.
inline IngestReport ingest(CorpusStore& store, const std::filesystem::path& path,
                           const IngestOptions& options = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read corpus file '" + path.string() + "'");

  IngestReport report;
  std::vector<Article> batch;
  std::set<std::string> batch_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::blank(line)) continue;
    auto parsed = detail::parse_record(line);
    if (auto* reason = std::get_if<std::string>(&parsed)) {
      report.rejections.push_back({line_no, *reason});
      continue;
    }
    Article a = std::get<Article>(std::move(parsed));
    a.source_line = line_no;
    if (store.contains(a.id) || batch_ids.count(a.id)) {
      report.rejections.push_back({line_no, "duplicate:id"});
      continue;
    }
    if (detail::blank(a.body)) {
      report.rejections.push_back({line_no, "faulty:empty_body"});
      store.add_faulty_rejection({a.outlet, a.published_at});
      batch_ids.insert(a.id);
      continue;
    }
    batch_ids.insert(a.id);
    batch.push_back(std::move(a));
  }

  if (options.strip_boilerplate) {
    std::map<std::string, std::vector<Article>> by_outlet;
    std::vector<std::pair<std::string, std::size_t>> order;  // preserve file order
    for (auto& a : batch) {
      order.emplace_back(a.outlet, by_outlet[a.outlet].size());
      by_outlet[a.outlet].push_back(std::move(a));
    }
    std::map<std::string, std::vector<Article>> cleaned;
    for (auto& [outlet, articles] : by_outlet) {
      auto result = strip_boilerplate(std::move(articles), options);
      report.boilerplate.insert(report.boilerplate.end(), result.removed.begin(),
                                result.removed.end());
      cleaned[outlet] = std::move(result.articles);
    }
    batch.clear();
    for (const auto& [outlet, pos] : order) batch.push_back(std::move(cleaned[outlet][pos]));
  } else {
    for (auto& a : batch) a.token_count = tokenize(a.body).size();
  }

  for (auto& a : batch) {
    if (detail::blank(a.body)) {
      report.rejections.push_back({a.source_line, "faulty:empty_after_boilerplate"});
      store.add_faulty_rejection({a.outlet, a.published_at});
      continue;
    }
    store.add(std::move(a));
    ++report.accepted;
  }
  std::stable_sort(report.rejections.begin(), report.rejections.end(),
                   [](const Rejection& x, const Rejection& y) { return x.record_line < y.record_line; });
  return report;
}

inline void write_rejections_csv(std::ostream& out, const IngestReport& report) {
  CsvWriter csv(out, {"record_line", "reason_code"});
  for (const auto& r : report.rejections) csv.row({std::to_string(r.record_line), r.reason_code});
}

struct SourceQuality {
  std::string outlet;
  std::size_t total_articles = 0;
  std::size_t faulty_articles = 0;
  double faulty_ratio = 0.0;
  std::size_t months_active = 0;
  std::size_t months_in_window = 0;
  double temporal_consistency = 0.0;
  /// faulty_ratio >= 5% excludes the source.
  bool excluded = false;
};

/// Quality of one outlet over `window`. Faulty means an empty body, fewer than
/// 25 tokens, or a detected language that disagrees with the declared one.
inline SourceQuality source_quality(const CorpusStore& store, const std::string& outlet,
                                    const DateRange& window) {
  SourceQuality q;
  q.outlet = outlet;
  std::set<std::int64_t> months;
  bool known = false;
  for (const auto& a : store.articles()) {
    if (a.outlet != outlet) continue;
    known = true;
    if (!window.contains(a.published_at)) continue;
    ++q.total_articles;
    if (a.faulty()) ++q.faulty_articles;
    months.insert(Month::of(a.published_at).ordinal());
  }
  for (const auto& f : store.faulty_rejected()) {
    if (f.outlet != outlet) continue;
    known = true;
    if (!window.contains(f.published_at)) continue;
    ++q.total_articles;
    ++q.faulty_articles;
    months.insert(Month::of(f.published_at).ordinal());
  }
  if (!known) throw InputError("unknown outlet '" + outlet + "'");
  q.faulty_ratio = static_cast<double>(q.faulty_articles) /
                   static_cast<double>(std::max<std::size_t>(q.total_articles, 1));
  q.months_active = months.size();
  q.months_in_window = static_cast<std::size_t>(std::max<std::int64_t>(window.month_count(), 0));
  q.temporal_consistency =
      q.months_in_window == 0 ? 0.0
                              : static_cast<double>(q.months_active) / static_cast<double>(q.months_in_window);
  q.excluded = q.faulty_ratio >= kFaultyExclusionRatio;
  return q;
}

struct CorpusStats {
  std::array<std::size_t, 3> articles{};
  std::array<std::size_t, 3> outlets{};
  std::size_t total = 0;
  std::optional<DateRange> window;
};

inline CorpusStats corpus_stats(const CorpusStore& store) {
  CorpusStats stats;
  std::array<std::set<std::string>, 3> outlets;
  for (const auto& a : store.articles()) {
    ++stats.articles[index_of(a.language)];
    outlets[index_of(a.language)].insert(a.outlet);
    if (!stats.window) {
      stats.window = DateRange{a.published_at, a.published_at};
    } else {
      stats.window->start = std::min(stats.window->start, a.published_at);
      stats.window->end = std::max(stats.window->end, a.published_at);
    }
  }
  for (std::size_t i = 0; i < 3; ++i) {
    stats.outlets[i] = outlets[i].size();
    stats.total += stats.articles[i];
  }
  return stats;
}

inline void write_stats_csv(std::ostream& out, const CorpusStats& stats) {
  CsvWriter csv(out, {"language", "articles", "outlets"});
  std::size_t outlets = 0;
  for (Language lang : kLanguages) {
    csv.row({std::string(to_code(lang)), std::to_string(stats.articles[index_of(lang)]),
             std::to_string(stats.outlets[index_of(lang)])});
    outlets += stats.outlets[index_of(lang)];
  }
  csv.row({"total", std::to_string(stats.total), std::to_string(outlets)});
}

inline std::string format_stats(const CorpusStats& stats) {
  std::ostringstream out;
  out << "articles: " << stats.total << '\n';
  for (Language lang : kLanguages) {
    out << "  " << to_code(lang) << ": " << stats.articles[index_of(lang)] << " ("
        << stats.outlets[index_of(lang)] << " outlets)\n";
  }
  if (stats.window) {
    out << "window: " << format_date(stats.window->start) << " .. " << format_date(stats.window->end)
        << '\n';
  }
  return out.str();
}

inline void write_source_quality_csv(std::ostream& out, const std::vector<SourceQuality>& rows) {
  CsvWriter csv(out, {"outlet", "total_articles", "faulty_articles", "faulty_ratio",
                      "months_active", "months_in_window", "temporal_consistency", "excluded"});
  for (const auto& q : rows) {
    csv.row({q.outlet, std::to_string(q.total_articles), std::to_string(q.faulty_articles),
             format_number(q.faulty_ratio), std::to_string(q.months_active),
             std::to_string(q.months_in_window), format_number(q.temporal_consistency),
             q.excluded ? "true" : "false"});
  }
}

}  // namespace newslens
