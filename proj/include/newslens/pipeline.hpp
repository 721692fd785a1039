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

// Config-driven commands behind the CLI.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "newslens/changepoint.hpp"
#include "newslens/corpus.hpp"
#include "newslens/csv.hpp"
#include "newslens/domestication.hpp"
#include "newslens/entities.hpp"
#include "newslens/error.hpp"
#include "newslens/language.hpp"
#include "newslens/lexical.hpp"
#include "newslens/retrieval.hpp"
#include "newslens/sentiment.hpp"
#include "newslens/time.hpp"

namespace newslens {

struct RunConfig {
  std::filesystem::path corpus;
  std::vector<Language> languages{Language::fr, Language::de, Language::it};
  std::optional<std::filesystem::path> queries;
  std::vector<std::filesystem::path> external_subsets;
  std::optional<std::filesystem::path> anchors;
  std::map<Language, std::filesystem::path> cue_lexica;
  std::map<Language, std::filesystem::path> function_words;
  std::map<Language, std::filesystem::path> abbreviations;
  std::optional<std::filesystem::path> annotations;
  std::optional<std::filesystem::path> gazetteer;
  double link_threshold = kDefaultLinkThreshold;
  cpd::CpdParams cpd;
  LpsrMode lpsr_mode = LpsrMode::article_mean;
  Granularity sentiment_granularity = Granularity::weekly;
  std::optional<DateRange> window;
  bool exclude_faulty_sources = true;
  IngestOptions ingest;
  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 0;

  /// Reads a JSON config. Relative paths resolve against the config file's
  /// directory; NEWSLENS_OUTPUT_DIR, when set, replaces output_dir.
  static RunConfig load(const std::filesystem::path& file);
  static RunConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
};

namespace detail {

inline std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

inline std::filesystem::path existing(const std::filesystem::path& base, const std::string& p,
                                      const std::string& key) {
  auto path = resolve(base, p);
  if (!std::filesystem::exists(path)) {
    throw InputError("config: " + key + " file not found: '" + path.string() + "'");
  }
  return path;
}

inline std::map<Language, std::filesystem::path> per_language(const nlohmann::json& j,
                                                               const std::filesystem::path& base,
                                                               const std::string& key) {
  std::map<Language, std::filesystem::path> out;
  if (!j.contains(key)) return out;
  for (const auto& [code, p] : j.at(key).items()) {
    out[require_language(code)] = existing(base, p.get<std::string>(), key + "." + code);
  }
  return out;
}

inline UtcTime day_start(const std::string& s, const char* key) {
  auto d = parse_date(s);
  if (!d) throw InputError(std::string("config: bad date for ") + key + ": '" + s + "'");
  return *d;
}

}  // namespace detail

inline RunConfig RunConfig::from_json(const nlohmann::json& j, const std::filesystem::path& base) {
  using detail::existing;
  RunConfig c;
  try {
    if (!j.is_object()) throw InputError("config: top level must be an object");
    if (!j.contains("corpus")) throw InputError("config: missing 'corpus'");
    c.corpus = existing(base, j.at("corpus").get<std::string>(), "corpus");
    if (j.contains("languages")) {
      c.languages.clear();
      for (const auto& code : j.at("languages")) c.languages.push_back(require_language(code.get<std::string>()));
      if (c.languages.empty()) throw InputError("config: 'languages' is empty");
    }
    if (j.contains("queries")) c.queries = existing(base, j.at("queries").get<std::string>(), "queries");
    if (j.contains("external_subsets")) {
      for (const auto& p : j.at("external_subsets")) {
        c.external_subsets.push_back(existing(base, p.get<std::string>(), "external_subsets"));
      }
    }
    if (j.contains("anchors")) c.anchors = existing(base, j.at("anchors").get<std::string>(), "anchors");
    c.cue_lexica = detail::per_language(j, base, "cue_lexica");
    c.function_words = detail::per_language(j, base, "function_words");
    c.abbreviations = detail::per_language(j, base, "abbreviations");
    if (j.contains("annotations")) {
      c.annotations = existing(base, j.at("annotations").get<std::string>(), "annotations");
    }
    if (j.contains("gazetteer")) c.gazetteer = existing(base, j.at("gazetteer").get<std::string>(), "gazetteer");
    c.link_threshold = j.value("link_threshold", kDefaultLinkThreshold);
    if (!(c.link_threshold >= 0.0 && c.link_threshold <= 1.0)) {
      throw InputError("config: link_threshold must be in [0, 1]");
    }
    if (j.contains("cpd")) {
      const auto& p = j.at("cpd");
      if (p.contains("penalty_multipliers")) {
        c.cpd.penalty_multipliers = p.at("penalty_multipliers").get<std::vector<double>>();
      }
      c.cpd.baseline_multiplier = p.value("baseline_multiplier", c.cpd.baseline_multiplier);
      c.cpd.bocpd.hazard = p.value("hazard", c.cpd.bocpd.hazard);
      c.cpd.bocpd.reset_max = p.value("reset_max", c.cpd.bocpd.reset_max);
      c.cpd.bocpd.prior_min = p.value("prior_min", c.cpd.bocpd.prior_min);
      c.cpd.window = p.value("window", c.cpd.window);
      c.cpd.loess_span = p.value("loess_span", c.cpd.loess_span);
      for (double m : c.cpd.penalty_multipliers) {
        if (!(m > 0)) throw InputError("config: penalty multipliers must be positive");
      }
      if (c.cpd.window == 0 || c.cpd.window % 2 == 0) throw InputError("config: cpd.window must be odd");
    }
    const std::string mode = j.value("lpsr_mode", std::string("article_mean"));
    if (mode == "article_mean") {
      c.lpsr_mode = LpsrMode::article_mean;
    } else if (mode == "pooled") {
      c.lpsr_mode = LpsrMode::pooled;
    } else {
      throw InputError("config: lpsr_mode must be 'article_mean' or 'pooled'");
    }
    const std::string gran = j.value("sentiment_granularity", std::string("weekly"));
    if (gran == "weekly") {
      c.sentiment_granularity = Granularity::weekly;
    } else if (gran == "monthly") {
      c.sentiment_granularity = Granularity::monthly;
    } else {
      throw InputError("config: sentiment_granularity must be 'weekly' or 'monthly'");
    }
    if (j.contains("window")) {
      const auto& w = j.at("window");
      const UtcTime start = detail::day_start(w.at("start").get<std::string>(), "window.start");
      const UtcTime end = detail::day_start(w.at("end").get<std::string>(), "window.end") +
                          std::chrono::seconds{86399};
      if (end < start) throw InputError("config: window ends before it starts");
      c.window = DateRange{start, end};
    }
    c.exclude_faulty_sources = j.value("exclude_faulty_sources", true);
    if (j.contains("boilerplate")) {
      const auto& b = j.at("boilerplate");
      c.ingest.strip_boilerplate = b.value("enabled", true);
      c.ingest.boilerplate_min_share = b.value("min_share", c.ingest.boilerplate_min_share);
      c.ingest.boilerplate_min_count = b.value("min_count", c.ingest.boilerplate_min_count);
    }
    c.output_dir = detail::resolve(base, j.value("output_dir", std::string("out")));
    c.seed = j.value("seed", std::uint64_t{0});
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("config: ") + ex.what());
  }
  if (const char* env = std::getenv("NEWSLENS_OUTPUT_DIR"); env && *env) c.output_dir = env;
  return c;
}

inline RunConfig RunConfig::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw InputError("config file not found: '" + file.string() + "'");
  const auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw InputError("config file is not valid JSON: '" + file.string() + "'");
  return from_json(j, file.parent_path());
}

/// Outcome of one command. Exit code 0 = clean, 1 = finished with warnings.
/// Fatal problems throw (InputError maps to exit code 2).
struct CommandResult {
  std::vector<std::string> warnings;
  std::vector<std::filesystem::path> written;

  int exit_code() const { return warnings.empty() ? 0 : 1; }
};

struct LoadedCorpus {
  CorpusStore store;
  IngestReport report;
};

inline LoadedCorpus load_corpus(const RunConfig& config) {
  LoadedCorpus c;
  c.report = ingest(c.store, config.corpus, config.ingest);
  return c;
}

inline DateRange quality_window(const RunConfig& config, const CorpusStore& store) {
  if (config.window) return *config.window;
  const CorpusStats stats = corpus_stats(store);
  if (stats.window) return *stats.window;
  return DateRange{UtcTime{}, UtcTime{}};
}

inline std::vector<SourceQuality> all_source_quality(const RunConfig& config, const CorpusStore& store) {
  const DateRange window = quality_window(config, store);
  std::vector<SourceQuality> rows;
  for (const auto& outlet : store.outlets()) rows.push_back(source_quality(store, outlet, window));
  return rows;
}

/// Copy of the store without excluded sources and outside-window articles.
inline CorpusStore analysis_store(const RunConfig& config, const CorpusStore& store) {
  std::set<std::string> excluded;
  if (config.exclude_faulty_sources) {
    for (const auto& q : all_source_quality(config, store)) {
      if (q.excluded) excluded.insert(q.outlet);
    }
  }
  CorpusStore out;
  for (const auto& a : store.articles()) {
    if (excluded.count(a.outlet)) continue;
    if (config.window && !config.window->contains(a.published_at)) continue;
    if (std::find(config.languages.begin(), config.languages.end(), a.language) == config.languages.end()) {
      continue;
    }
    out.add(a);
  }
  return out;
}

inline CommandResult cmd_ingest(const RunConfig& config) {
  CommandResult result;
  const LoadedCorpus c = load_corpus(config);
  const auto dir = config.output_dir / "ingest";
  {
    auto out = open_output(dir / "stats.csv");
    write_stats_csv(out, corpus_stats(c.store));
  }
  {
    auto out = open_output(dir / "rejections.csv");
    write_rejections_csv(out, c.report);
  }
  {
    auto out = open_output(dir / "boilerplate.csv");
    CsvWriter csv(out, {"outlet", "line", "articles"});
    for (const auto& r : c.report.boilerplate) csv.row({r.outlet, r.line, std::to_string(r.article_count)});
  }
  result.written = {dir / "stats.csv", dir / "rejections.csv", dir / "boilerplate.csv"};
  return result;
}

inline CommandResult cmd_stats(const RunConfig& config, std::ostream& text) {
  CommandResult result;
  const LoadedCorpus c = load_corpus(config);
  const CorpusStats stats = corpus_stats(c.store);
  const auto rows = all_source_quality(config, c.store);
  const auto dir = config.output_dir / "stats";
  {
    auto out = open_output(dir / "stats.csv");
    write_stats_csv(out, stats);
  }
  {
    auto out = open_output(dir / "source_quality.csv");
    write_source_quality_csv(out, rows);
  }
  text << format_stats(stats);
  text << "rejected records: " << c.report.rejections.size() << '\n';
  for (const auto& q : rows) {
    if (q.excluded) {
      text << "excluded source: " << q.outlet << " (faulty " << q.faulty_articles << "/" << q.total_articles
           << ")\n";
    }
  }
  result.written = {dir / "stats.csv", dir / "source_quality.csv"};
  return result;
}

inline IndexSet build_indexes(const RunConfig& config, const CorpusStore& store,
                              std::vector<std::string>& warnings) {
  IndexSet indexes;
  for (Language lang : config.languages) {
    if (store.by_language(lang).empty()) {
      warnings.push_back("no articles for language " + std::string(to_code(lang)));
      continue;
    }
    indexes.emplace(lang, InvertedIndex::build(store, lang));
  }
  return indexes;
}

/// Query-defined events followed by external subsets, in file order.
inline std::vector<EventSubset> resolve_events(const RunConfig& config, const CorpusStore& store,
                                               std::vector<std::string>& warnings,
                                               std::map<std::string, std::size_t>* min_volume = nullptr) {
  if (!config.queries && config.external_subsets.empty()) {
    throw InputError("config defines neither queries nor external subsets");
  }
  std::vector<EventSubset> events;
  if (config.queries) {
    const auto specs = load_query_specs(*config.queries);
    const IndexSet indexes = build_indexes(config, store, warnings);
    for (const auto& spec : specs) {
      QuerySpec s = spec;
      for (auto it = s.phrases.begin(); it != s.phrases.end();) {
        it = indexes.count(it->first) ? std::next(it) : s.phrases.erase(it);
      }
      if (s.phrases.empty()) {
        warnings.push_back("event '" + spec.event_name + "' has no indexed language");
        continue;
      }
      if (min_volume) (*min_volume)[s.event_name] = s.min_per_language_volume;
      events.push_back(run_event_query(s, indexes));
    }
  }
  for (const auto& path : config.external_subsets) {
    events.push_back(load_external_subset_file(path, store));
    if (min_volume) {
      std::ifstream in(path);
      const auto j = nlohmann::json::parse(in, nullptr, false);
      (*min_volume)[events.back().event_name] = j.value("min_per_language_volume", std::size_t{0});
    }
  }
  std::set<std::string> names;
  for (const auto& e : events) {
    if (!names.insert(e.event_name).second) throw InputError("event '" + e.event_name + "' is defined twice");
  }
  return events;
}

inline CommandResult cmd_events(const RunConfig& config) {
  CommandResult result;
  const LoadedCorpus c = load_corpus(config);
  const CorpusStore store = analysis_store(config, c.store);
  std::map<std::string, std::size_t> min_volume;
  const auto events = resolve_events(config, store, result.warnings, &min_volume);
  const auto dir = config.output_dir / "events";
  {
    auto out = open_output(dir / "subsets.csv");
    CsvWriter csv(out, {"event", "language", "article_id", "score"});
    for (const auto& e : events) write_subset_rows(csv, e);
  }
  {
    auto out = open_output(dir / "summary.csv");
    CsvWriter csv(out, {"event", "method", "language", "articles", "min_per_language_volume", "below_volume"});
    for (const auto& e : events) {
      for (const auto& [lang, ls] : e.languages) {
        csv.row({e.event_name, std::string(to_string(e.method)), std::string(to_code(lang)),
                 std::to_string(ls.entries.size()), std::to_string(min_volume[e.event_name]),
                 ls.below_volume ? "true" : "false"});
      }
    }
  }
  result.written = {dir / "subsets.csv", dir / "summary.csv"};
  return result;
}

namespace detail {

inline LexicalResources lexical_resources(const RunConfig& config, Language lang) {
  LexicalResources r;
  if (auto it = config.function_words.find(lang); it != config.function_words.end()) {
    r.function_words = TermList::load(it->second);
  }
  if (auto it = config.abbreviations.find(lang); it != config.abbreviations.end()) {
    r.abbreviations = TermList::load(it->second);
  }
  return r;
}

inline void lexical_outputs(const RunConfig& config, const CorpusStore& store, const EventSubset& event,
                            const std::filesystem::path& dir, CommandResult& result) {
  auto monthly_out = open_output(dir / "lexical.csv");
  CsvWriter monthly(monthly_out, {"event", "language", "month", "metric", "value", "rolling3", "articles"});
  auto article_out = open_output(dir / "lexical_articles.csv");
  CsvWriter articles(article_out, {"article_id", "language", "month", "tokens", "sentences", "ttr",
                                   "density", "msl", "ttr_z", "density_z", "msl_z", "composite_z"});
  result.written.push_back(dir / "lexical.csv");
  result.written.push_back(dir / "lexical_articles.csv");

  for (const auto& [lang, ls] : event.languages) {
    const std::string code(to_code(lang));
    if (!config.function_words.count(lang)) {
      result.warnings.push_back("no function-word list for " + code + "; lexical density counts every token");
    }
    const LexicalResources res = lexical_resources(config, lang);
    std::vector<const Article*> subset;
    for (const auto& e : ls.entries) subset.push_back(&store.at(e.id));
    std::sort(subset.begin(), subset.end(), [](const Article* a, const Article* b) { return a->id < b->id; });
    std::vector<LexicalRecord> records;
    for (const Article* a : subset) {
      try {
        records.push_back(article_metrics(*a, res));
      } catch (const InputError& ex) {
        result.warnings.push_back(std::string("lexical: ") + ex.what());
      }
    }
    if (records.size() < 2) {
      result.warnings.push_back("lexical: fewer than 2 measurable articles for " + code);
      continue;
    }
    const Standardized st = standardize(std::move(records));
    for (const auto& r : st.records) {
      articles.row({r.article_id, code, r.month.label(), std::to_string(r.token_count),
                    std::to_string(r.sentence_count), format_number(r.raw[0]), format_number(r.raw[1]),
                    format_number(r.raw[2]), format_number(r.z[0]), format_number(r.z[1]),
                    format_number(r.z[2]), format_number(r.composite_z)});
    }
    auto emit = [&](const std::string& metric, const MonthlySeries& s) {
      for (const auto& p : s.points) {
        monthly.row({event.event_name, code, p.month.label(), metric, format_number(p.raw),
                     format_number(p.rolling3), std::to_string(p.count)});
      }
    };
    for (Metric m : kMetrics) {
      const auto i = static_cast<std::size_t>(m);
      const std::string name(to_string(m));
      emit(name, monthly_aggregate(st.records, [i](const LexicalRecord& r) { return r.raw[i]; }));
      emit(name + "_z", monthly_aggregate(st.records, [i](const LexicalRecord& r) { return r.z[i]; }));
    }
    emit("composite_z", monthly_aggregate(st.records, [](const LexicalRecord& r) { return r.composite_z; }));
    try {
      const auto rc = relative_change(st.records, st.baseline);
      for (Metric m : kMetrics) {
        const auto i = static_cast<std::size_t>(m);
        emit(std::string(to_string(m)) + "_relchange",
             monthly_aggregate(rc, [i](const RelativeChangeRecord& r) { return r.r[i]; }));
      }
      emit("composite_relchange", monthly_aggregate(rc, [](const RelativeChangeRecord& r) { return r.composite; }));
    } catch (const InputError& ex) {
      result.warnings.push_back("lexical " + code + ": " + ex.what());
    }
  }
}

inline std::vector<MentionRecord> event_mentions(const RunConfig& config, const CorpusStore& full,
                                                 const CorpusStore& store, const EventSubset& event,
                                                 const std::filesystem::path& dir, CommandResult& result) {
  std::set<std::string> ids;
  for (const auto& [lang, ls] : event.languages) {
    for (const auto& e : ls.entries) ids.insert(e.id);
  }
  std::vector<MentionRecord> mentions;
  if (config.annotations) {
    const MentionIngestReport report = ingest_mentions(*config.annotations, full);
    auto out = open_output(dir / "mention_rejections.csv");
    write_mention_rejections_csv(out, report);
    result.written.push_back(dir / "mention_rejections.csv");
    for (const auto& m : report.accepted) {
      if (ids.count(m.article_id)) mentions.push_back(m);
    }
  } else if (config.gazetteer) {
    const Gazetteer g = Gazetteer::load(*config.gazetteer);
    for (const auto& id : ids) {
      auto tagged = g.tag(store.at(id));
      mentions.insert(mentions.end(), tagged.begin(), tagged.end());
    }
  } else {
    result.warnings.push_back("no annotations or gazetteer configured; no entity mentions");
  }
  return apply_link_gate(std::move(mentions), config.link_threshold);
}

inline void domestication_outputs(const RunConfig& config, const CorpusStore& store, const EventSubset& event,
                                  const std::vector<MentionRecord>& mentions,
                                  const std::filesystem::path& dir, CommandResult& result) {
  auto weekly_out = open_output(dir / "domestication.csv");
  CsvWriter weekly(weekly_out, {"event", "language", "iso_week", "p_swiss", "p_neighbor", "p_other", "articles"});
  auto article_out = open_output(dir / "domestication_articles.csv");
  CsvWriter articles(article_out, {"article_id", "language", "p_swiss", "p_neighbor", "p_other",
                                   "anchored_mentions", "cue", "m_prox", "m_other", "lpsr"});
  auto lpsr_out = open_output(dir / "lpsr.csv");
  CsvWriter lpsr_csv(lpsr_out, {"event", "language", "iso_week", "lpsr", "articles", "mode"});
  result.written.push_back(dir / "domestication.csv");
  result.written.push_back(dir / "domestication_articles.csv");
  result.written.push_back(dir / "lpsr.csv");

  if (!config.anchors) {
    result.warnings.push_back("no anchor table configured; domestication skipped");
    return;
  }
  const AnchorTable table = AnchorTable::load(*config.anchors);
  CueLexica lexica;
  for (const auto& [lang, path] : config.cue_lexica) lexica.emplace(lang, CueLexicon::load(path, lang));

  std::map<std::string, AnchorCounts> counts;
  for (const auto& m : mentions) {
    if (!m.linked()) continue;
    const Article& a = store.at(m.article_id);
    counts[m.article_id].add(resolve_anchor(m, table, a.language));
  }

  auto timestamp = [&](const std::string& id) { return store.at(id).published_at; };
  bool any = false;
  for (const auto& [lang, ls] : event.languages) {
    const std::string code(to_code(lang));
    const bool has_lexicon = lexica.count(lang) != 0;
    if (!has_lexicon) result.warnings.push_back("no cue lexicon for " + code + "; cue bonus disabled");
    std::vector<std::string> ids;
    for (const auto& e : ls.entries) ids.push_back(e.id);
    std::sort(ids.begin(), ids.end());
    std::vector<ArticleProfile> profiles;
    std::vector<LpsrRecord> lpsr_records;
    for (const auto& id : ids) {
      auto it = counts.find(id);
      if (it == counts.end() || it->second.total() == 0) continue;
      const Article& a = store.at(id);
      const bool cue = has_lexicon && detect_cues(a, lexica);
      auto profile = article_profile(id, lang, it->second, cue);
      const LpsrRecord lr = article_lpsr(id, lang, it->second);
      articles.row({id, code, format_number(profile->p_swiss), format_number(profile->p_neighbor),
                    format_number(profile->p_other), std::to_string(profile->anchored_mention_count),
                    cue ? "true" : "false", std::to_string(lr.m_prox), std::to_string(lr.m_other),
                    format_number(lr.lpsr)});
      profiles.push_back(*profile);
      lpsr_records.push_back(lr);
    }
    any = any || !profiles.empty();
    for (const auto& w : weekly_profiles(profiles, lang, timestamp)) {
      weekly.row({event.event_name, code, w.week.label(), format_number(w.p_swiss), format_number(w.p_neighbor),
                  format_number(w.p_other), std::to_string(w.article_count)});
    }
    const std::string mode = config.lpsr_mode == LpsrMode::pooled ? "pooled" : "article_mean";
    for (const auto& w : weekly_lpsr(lpsr_records, lang, timestamp, config.lpsr_mode)) {
      lpsr_csv.row({event.event_name, code, w.week.label(), format_number(w.mean_lpsr),
                    std::to_string(w.article_count), mode});
    }
  }
  if (!any) result.warnings.push_back("event '" + event.event_name + "' has no anchored entity mentions");
}

inline void sentiment_outputs(const RunConfig& config, const CorpusStore& store, const EventSubset& event,
                              const std::vector<MentionRecord>& mentions, const std::filesystem::path& dir,
                              CommandResult& result) {
  auto out = open_output(dir / "sentiment.csv");
  CsvWriter csv(out, {"event", "language", "link_id", "granularity", "bucket", "mean_score", "mentions",
                      "low_support"});
  result.written.push_back(dir / "sentiment.csv");
  std::set<std::pair<Language, std::string>> keys;
  for (const auto& m : mentions) {
    if (m.linked() && m.sentiment) keys.emplace(store.at(m.article_id).language, *m.link_id);
  }
  for (const auto& [lang, link] : keys) {
    if (!event.languages.count(lang)) continue;
    const auto series = entity_series(mentions, store, link, lang, config.sentiment_granularity);
    for (const auto& p : series.points) {
      csv.row({event.event_name, std::string(to_code(lang)), link, std::string(to_string(series.granularity)),
               p.bucket.label(), format_number(p.mean_score), std::to_string(p.mention_count),
               p.low_support ? "true" : "false"});
    }
  }
}

inline std::string detector_list(const std::set<cpd::Detector>& ds) {
  std::string s;
  for (auto d : ds) {
    if (!s.empty()) s += ';';
    s += to_string(d);
  }
  return s;
}

inline void changepoint_outputs(const RunConfig& config, const CorpusStore& store, const EventSubset& event,
                                const std::filesystem::path& dir, CommandResult& result) {
  auto series_out = open_output(dir / "series.csv");
  CsvWriter series(series_out, {"event", "language", "iso_week", "raw", "ma3", "loess"});
  auto cp_out = open_output(dir / "changepoints.csv");
  CsvWriter cps(cp_out, {"event", "language", "detector", "index", "iso_week"});
  auto cons_out = open_output(dir / "consensus.csv");
  CsvWriter cons(cons_out, {"event", "language", "index", "iso_week_median", "supporting_detectors",
                            "band_start", "band_end"});
  result.written.push_back(dir / "series.csv");
  result.written.push_back(dir / "changepoints.csv");
  result.written.push_back(dir / "consensus.csv");

  for (const auto& [lang, ls] : event.languages) {
    const std::string code(to_code(lang));
    if (ls.entries.empty()) {
      result.warnings.push_back("event '" + event.event_name + "' has no " + code + " articles");
      continue;
    }
    std::vector<UtcTime> times;
    for (const auto& e : ls.entries) times.push_back(store.at(e.id).published_at);
    const cpd::WeeklySeries ws = cpd::weekly_counts(times, event.event_name, lang);
    const cpd::CpdResult r = cpd::detect_change_points(ws.values, config.cpd);
    for (std::size_t i = 0; i < ws.size(); ++i) {
      series.row({event.event_name, code, ws.week_at(i).label(), format_number(r.raw[i]),
                  format_number(r.smoothed[i]), r.loess.empty() ? "" : format_number(r.loess[i])});
    }
    if (!r.detected) {
      result.warnings.push_back("series for " + code + " is too short for change-point detection");
      continue;
    }
    for (const auto& d : r.report.detectors) {
      for (std::size_t i : d.indices) {
        cps.row({event.event_name, code, std::string(to_string(d.detector)), std::to_string(i),
                 ws.week_at(i).label()});
      }
    }
    for (const auto& cl : r.report.clusters) {
      if (!cl.supported) continue;
      const std::size_t lo = cl.median == 0 ? 0 : cl.median - 1;
      const std::size_t hi = std::min(cl.median + 1, ws.size() - 1);
      cons.row({event.event_name, code, std::to_string(cl.median), ws.week_at(cl.median).label(),
                detector_list(cl.detectors), ws.week_at(lo).label(), ws.week_at(hi).label()});
    }
  }
}

}  // namespace detail

/// Runs every per-event analysis and writes the tables under
/// <output_dir>/analyze/<event>/.
inline CommandResult cmd_analyze(const RunConfig& config, const std::string& event_name) {
  CommandResult result;
  const LoadedCorpus c = load_corpus(config);
  const CorpusStore store = analysis_store(config, c.store);
  const auto events = resolve_events(config, store, result.warnings);
  auto it = std::find_if(events.begin(), events.end(),
                         [&](const EventSubset& e) { return e.event_name == event_name; });
  if (it == events.end()) throw InputError("unknown event '" + event_name + "'");
  const EventSubset& event = *it;
  const auto dir = config.output_dir / "analyze" / event_name;
  std::filesystem::create_directories(dir);

  {
    auto out = open_output(dir / "subset.csv");
    CsvWriter csv(out, {"event", "language", "article_id", "score"});
    write_subset_rows(csv, event);
    result.written.push_back(dir / "subset.csv");
  }
  detail::lexical_outputs(config, store, event, dir, result);
  const auto mentions = detail::event_mentions(config, c.store, store, event, dir, result);
  detail::domestication_outputs(config, store, event, mentions, dir, result);
  detail::sentiment_outputs(config, store, event, mentions, dir, result);
  detail::changepoint_outputs(config, store, event, dir, result);
  return result;
}

}  // namespace newslens
