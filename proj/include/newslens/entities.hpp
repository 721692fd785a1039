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
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>
#include <unicode/regex.h>

#include "newslens/corpus.hpp"
#include "newslens/csv.hpp"
#include "newslens/error.hpp"
#include "newslens/language.hpp"
#include "newslens/unicode.hpp"

namespace newslens {

enum class EntityCategory { person, location, organization, event };

inline std::string_view to_string(EntityCategory c) {
  switch (c) {
    case EntityCategory::person: return "Person";
    case EntityCategory::location: return "Location";
    case EntityCategory::organization: return "Organization";
    case EntityCategory::event: return "Event";
  }
  return "?";
}

inline std::optional<EntityCategory> parse_category(std::string_view s) {
  std::string lower(s);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "person" || lower == "per") return EntityCategory::person;
  if (lower == "location" || lower == "loc") return EntityCategory::location;
  if (lower == "organization" || lower == "organisation" || lower == "org") {
    return EntityCategory::organization;
  }
  if (lower == "event" || lower == "evt") return EntityCategory::event;
  return std::nullopt;
}

/// Half-open range of Unicode code point offsets into the article body.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;
  friend bool operator==(const Span&, const Span&) = default;
};

struct SentimentProbs {
  double pos = 0.0;
  double neu = 0.0;
  double neg = 0.0;
};

inline constexpr double kProbabilitySumTolerance = 1e-6;

struct MentionRecord {
  std::string article_id;
  std::string surface;
  EntityCategory category = EntityCategory::person;
  Span span;
  std::optional<std::string> link_id;
  std::optional<double> link_confidence;
  std::optional<SentimentProbs> sentiment;

  bool linked() const { return link_id.has_value(); }
};

// ---------------------------------------------------------------------------
// Gazetteer tagging

struct GazetteerEntry {
  std::string surface;
  EntityCategory category = EntityCategory::person;
  std::optional<std::string> link_id;
  double confidence = 1.0;
};

/// Longest-match, left-to-right, non-overlapping dictionary tagger. Matches
/// must sit on word boundaries and are case-sensitive, except that the first
/// character may differ in case at the start of a sentence.
class Gazetteer {
 public:
  Gazetteer() = default;
  explicit Gazetteer(std::vector<GazetteerEntry> entries) {
    for (auto& e : entries) add(std::move(e));
  }

  void add(GazetteerEntry entry) {
    std::u32string s = unicode::to_u32(entry.surface);
    if (s.empty()) throw InputError("gazetteer entry with empty surface");
    const auto key = static_cast<char32_t>(u_foldCase(static_cast<UChar32>(s[0]), U_FOLD_CASE_DEFAULT));
    auto& bucket = buckets_[key];
    bucket.push_back({std::move(s), std::move(entry)});
    std::stable_sort(bucket.begin(), bucket.end(), [](const Item& a, const Item& b) {
      return a.text.size() > b.text.size();
    });
  }

  /// TSV: surface, category, link_id (may be empty), confidence (optional).
  static Gazetteer load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read gazetteer '" + path.string() + "'");
    Gazetteer g;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      const auto cols = split_tabs(line);
      const auto where = path.string() + ":" + std::to_string(line_no);
      if (cols.size() < 2) throw InputError("gazetteer " + where + ": expected surface and category");
      auto category = parse_category(cols[1]);
      if (!category) throw InputError("gazetteer " + where + ": unknown category '" + cols[1] + "'");
      GazetteerEntry e{cols[0], *category, std::nullopt, 1.0};
      if (cols.size() > 2 && !cols[2].empty()) e.link_id = cols[2];
      if (cols.size() > 3 && !cols[3].empty()) {
        try {
          e.confidence = std::stod(cols[3]);
        } catch (const std::exception&) {
          throw InputError("gazetteer " + where + ": bad confidence '" + cols[3] + "'");
        }
      }
      g.add(std::move(e));
    }
    return g;
  }

  std::vector<MentionRecord> tag(const Article& article) const {
    const std::u32string body = unicode::to_u32(article.body);
    std::vector<MentionRecord> out;
    std::size_t i = 0;
    while (i < body.size()) {
      if (i > 0 && unicode::is_word_char(static_cast<UChar32>(body[i - 1]))) {
        ++i;
        continue;
      }
      const auto key = static_cast<char32_t>(u_foldCase(static_cast<UChar32>(body[i]), U_FOLD_CASE_DEFAULT));
      auto bucket = buckets_.find(key);
      const Item* hit = nullptr;
      if (bucket != buckets_.end()) {
        const bool initial = sentence_initial(body, i);
        for (const Item& item : bucket->second) {
          if (matches(body, i, item.text, initial)) {
            hit = &item;
            break;
          }
        }
      }
      if (!hit) {
        ++i;
        continue;
      }
      MentionRecord m;
      m.article_id = article.id;
      m.surface = unicode::from_u32(std::u32string_view(body).substr(i, hit->text.size()));
      m.category = hit->entry.category;
      m.span = {i, i + hit->text.size()};
      m.link_id = hit->entry.link_id;
      if (m.link_id) m.link_confidence = hit->entry.confidence;
      out.push_back(std::move(m));
      i += hit->text.size();
    }
    return out;
  }

 private:
  struct Item {
    std::u32string text;
    GazetteerEntry entry;
  };

  static bool sentence_initial(const std::u32string& body, std::size_t i) {
    while (i > 0 && u_isUWhiteSpace(static_cast<UChar32>(body[i - 1]))) --i;
    if (i == 0) return true;
    const char32_t c = body[i - 1];
    return c == U'.' || c == U'!' || c == U'?' || c == U'…';
  }

  static bool matches(const std::u32string& body, std::size_t i, const std::u32string& text,
                      bool initial) {
    if (i + text.size() > body.size()) return false;
    if (body[i] != text[0]) {
      if (!initial) return false;
      if (u_foldCase(static_cast<UChar32>(body[i]), U_FOLD_CASE_DEFAULT) !=
          u_foldCase(static_cast<UChar32>(text[0]), U_FOLD_CASE_DEFAULT)) {
        return false;
      }
    }
    if (body.compare(i + 1, text.size() - 1, text, 1, text.size() - 1) != 0) return false;
    const std::size_t end = i + text.size();
    return end == body.size() || !unicode::is_word_char(static_cast<UChar32>(body[end]));
  }

  std::unordered_map<char32_t, std::vector<Item>> buckets_;
};

inline std::vector<MentionRecord> gazetteer_tag(const Article& article, const Gazetteer& gazetteer) {
  return gazetteer.tag(article);
}

// ---------------------------------------------------------------------------
// Annotation ingestion

struct MentionIngestReport {
  std::vector<MentionRecord> accepted;
  std::vector<Rejection> rejections;
};

/// Reads line-delimited mention annotations and validates them against the
/// corpus: known article, start < end <= body length (code points),
/// confidence in [0,1], and sentiment probabilities in [0,1] summing to 1.
inline MentionIngestReport ingest_mentions(const std::filesystem::path& path,
                                           const CorpusStore& store) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read mention file '" + path.string() + "'");
  MentionIngestReport report;
  std::unordered_map<std::string, std::size_t> body_length;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::blank(line)) continue;
    auto reject = [&](const char* reason) { report.rejections.push_back({line_no, reason}); };
    const auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      reject("malformed:json");
      continue;
    }
    MentionRecord m;
    try {
      m.article_id = j.at("article_id").get<std::string>();
      m.surface = j.at("surface").get<std::string>();
      auto category = parse_category(j.at("category").get<std::string>());
      if (!category) {
        reject("malformed:category");
        continue;
      }
      m.category = *category;
      const auto start = j.at("start").get<long long>();
      const auto end = j.at("end").get<long long>();
      if (start < 0 || end < 0) {
        reject("invalid_span");
        continue;
      }
      m.span = {static_cast<std::size_t>(start), static_cast<std::size_t>(end)};
      if (j.contains("link_id") && !j["link_id"].is_null()) m.link_id = j["link_id"].get<std::string>();
      if (j.contains("confidence") && !j["confidence"].is_null()) {
        m.link_confidence = j["confidence"].get<double>();
      }
      const int probs = int(j.contains("p_pos") && !j["p_pos"].is_null()) +
                        int(j.contains("p_neu") && !j["p_neu"].is_null()) +
                        int(j.contains("p_neg") && !j["p_neg"].is_null());
      if (probs == 3) {
        m.sentiment = SentimentProbs{j["p_pos"].get<double>(), j["p_neu"].get<double>(),
                                     j["p_neg"].get<double>()};
      } else if (probs != 0) {
        reject("invalid_sentiment");
        continue;
      }
    } catch (const nlohmann::json::exception&) {
      reject("malformed:field");
      continue;
    }

    const Article* article = store.find(m.article_id);
    if (!article) {
      reject("unknown_article");
      continue;
    }
    auto len_it = body_length.find(m.article_id);
    if (len_it == body_length.end()) {
      len_it = body_length.emplace(m.article_id, unicode::length(article->body)).first;
    }
    if (m.span.start >= m.span.end || m.span.end > len_it->second) {
      reject("invalid_span");
      continue;
    }
    if (m.link_id && !m.link_confidence) {
      reject("invalid_confidence");
      continue;
    }
    if (m.link_confidence && !(*m.link_confidence >= 0.0 && *m.link_confidence <= 1.0)) {
      reject("invalid_confidence");
      continue;
    }
    if (m.sentiment) {
      const auto& p = *m.sentiment;
      auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
      if (!in_unit(p.pos) || !in_unit(p.neu) || !in_unit(p.neg)) {
        reject("invalid_sentiment");
        continue;
      }
      if (std::abs(p.pos + p.neu + p.neg - 1.0) > kProbabilitySumTolerance) {
        reject("sentiment_sum");
        continue;
      }
    }
    report.accepted.push_back(std::move(m));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Link gate

inline constexpr double kDefaultLinkThreshold = 0.5;

/// Clears links whose confidence is below `threshold`; the mention stays.
inline std::vector<MentionRecord> apply_link_gate(std::vector<MentionRecord> mentions,
                                                  double threshold = kDefaultLinkThreshold) {
  for (auto& m : mentions) {
    if (!m.link_id) continue;
    if (!m.link_confidence || *m.link_confidence < threshold) {
      m.link_id.reset();
      m.link_confidence.reset();
    }
  }
  return mentions;
}

// ---------------------------------------------------------------------------
// Anchoring

struct Anchor {
  enum class Kind { swiss, country, supranational } kind = Kind::country;
  /// ISO-3166 alpha-2, set for Kind::country.
  std::string country;

  friend bool operator==(const Anchor&, const Anchor&) = default;
};

inline std::optional<Anchor> parse_anchor(std::string_view s) {
  std::string v(s);
  std::string lower = v;
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "swiss" || lower == "ch") return Anchor{Anchor::Kind::swiss, "CH"};
  if (lower == "supranational") return Anchor{Anchor::Kind::supranational, ""};
  if (v.size() == 2 && std::isalpha(static_cast<unsigned char>(v[0])) &&
      std::isalpha(static_cast<unsigned char>(v[1]))) {
    for (char& c : v) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return Anchor{Anchor::Kind::country, v};
  }
  return std::nullopt;
}

/// Static link_id -> anchor map. When an entity is listed with several
/// anchors, supranational wins over any country; two different countries are
/// an error.
class AnchorTable {
 public:
  void add(const std::string& link_id, const Anchor& anchor) {
    auto [it, inserted] = anchors_.emplace(link_id, anchor);
    if (inserted || it->second == anchor) return;
    if (anchor.kind == Anchor::Kind::supranational) {
      it->second = anchor;
    } else if (it->second.kind != Anchor::Kind::supranational) {
      throw InputError("anchor table: conflicting countries for '" + link_id + "'");
    }
  }

  static AnchorTable load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read anchor table '" + path.string() + "'");
    AnchorTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      const auto cols = split_tabs(line);
      if (cols.size() < 2) {
        throw InputError("anchor table " + path.string() + ":" + std::to_string(line_no) +
                         ": expected link_id<TAB>anchor");
      }
      auto anchor = parse_anchor(cols[1]);
      if (!anchor) {
        throw InputError("anchor table " + path.string() + ":" + std::to_string(line_no) +
                         ": bad anchor '" + cols[1] + "'");
      }
      table.add(cols[0], *anchor);
    }
    return table;
  }

  const Anchor* find(const std::string& link_id) const {
    auto it = anchors_.find(link_id);
    return it == anchors_.end() ? nullptr : &it->second;
  }
  std::size_t size() const { return anchors_.size(); }

 private:
  std::map<std::string, Anchor> anchors_;
};

enum class AnchorClass { swiss, neighbor, foreign_other, unanchored };

inline std::string_view to_string(AnchorClass c) {
  switch (c) {
    case AnchorClass::swiss: return "swiss";
    case AnchorClass::neighbor: return "neighbor";
    case AnchorClass::foreign_other: return "foreign_other";
    case AnchorClass::unanchored: return "unanchored";
  }
  return "?";
}

/// Proximate neighbour countries of each language region.
inline const std::vector<std::string>& neighbors(Language lang) {
  static const std::vector<std::string> fr{"FR"}, de{"DE", "AT"}, it{"IT"};
  switch (lang) {
    case Language::fr: return fr;
    case Language::de: return de;
    case Language::it: return it;
  }
  return fr;
}

inline AnchorClass resolve_anchor(const MentionRecord& mention, const AnchorTable& table,
                                  Language article_language) {
  if (!mention.link_id) return AnchorClass::unanchored;
  const Anchor* a = table.find(*mention.link_id);
  if (!a) return AnchorClass::unanchored;
  switch (a->kind) {
    case Anchor::Kind::swiss: return AnchorClass::swiss;
    case Anchor::Kind::supranational: return AnchorClass::foreign_other;
    case Anchor::Kind::country: {
      if (a->country == "CH") return AnchorClass::swiss;
      const auto& n = neighbors(article_language);
      return std::find(n.begin(), n.end(), a->country) != n.end() ? AnchorClass::neighbor
                                                                   : AnchorClass::foreign_other;
    }
  }
  return AnchorClass::unanchored;
}

// ---------------------------------------------------------------------------
// Cue lexica

/// Case-insensitive regular expressions, one per line. Each pattern only
/// matches on word boundaries.
class CueLexicon {
 public:
  CueLexicon() = default;
  CueLexicon(Language language, const std::vector<std::string>& patterns) : language_(language) {
    for (const auto& p : patterns) add(p);
    if (patterns_.empty()) throw InputError("cue lexicon for " + std::string(to_code(language)) + " is empty");
  }

  static CueLexicon load(const std::filesystem::path& path, Language language) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read cue lexicon '" + path.string() + "'");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#') continue;
      lines.push_back(line.substr(first, line.find_last_not_of(" \t") - first + 1));
    }
    return CueLexicon(language, lines);
  }

  Language language() const { return language_; }
  std::size_t size() const { return patterns_.size(); }

  bool matches(const std::string& text) const {
    const icu::UnicodeString input = unicode::nfc(unicode::from_utf8(text));
    for (const auto& pattern : patterns_) {
      UErrorCode status = U_ZERO_ERROR;
      std::unique_ptr<icu::RegexMatcher> m(pattern->matcher(input, status));
      if (U_FAILURE(status)) throw Error("cue matcher creation failed");
      if (m->find()) return true;
    }
    return false;
  }

 private:
  void add(const std::string& pattern) {
    const icu::UnicodeString wrapped = unicode::nfc(unicode::from_utf8(
        "(?<![\\p{L}\\p{M}\\p{N}])(?:" + pattern + ")(?![\\p{L}\\p{M}\\p{N}])"));
    UParseError perr;
    UErrorCode status = U_ZERO_ERROR;
    std::shared_ptr<const icu::RegexPattern> compiled(
        icu::RegexPattern::compile(wrapped, UREGEX_CASE_INSENSITIVE, perr, status));
    if (U_FAILURE(status) || !compiled) throw InputError("cue pattern does not compile: '" + pattern + "'");
    patterns_.push_back(std::move(compiled));
  }

  Language language_ = Language::fr;
  std::vector<std::shared_ptr<const icu::RegexPattern>> patterns_;
};

using CueLexica = std::map<Language, CueLexicon>;

/// True iff a cue of the article's language occurs in its title or body.
inline bool detect_cues(const Article& article, const CueLexica& lexica) {
  auto it = lexica.find(article.language);
  if (it == lexica.end()) {
    throw InputError("no cue lexicon for language '" + std::string(to_code(article.language)) + "'");
  }
  return it->second.matches(article.title) || it->second.matches(article.body);
}

inline void write_mention_rejections_csv(std::ostream& out, const MentionIngestReport& report) {
  CsvWriter csv(out, {"record_line", "reason_code"});
  for (const auto& r : report.rejections) csv.row({std::to_string(r.record_line), r.reason_code});
}

}  // namespace newslens
