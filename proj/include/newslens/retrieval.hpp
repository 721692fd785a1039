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
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "newslens/corpus.hpp"
#include "newslens/csv.hpp"
#include "newslens/error.hpp"
#include "newslens/language.hpp"
#include "newslens/text.hpp"

namespace newslens {

/// Okapi BM25 free parameters.
struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

struct IndexStats {
  Language language = Language::fr;
  std::size_t document_count = 0;
  double average_length = 0.0;
  std::size_t vocabulary_size = 0;
};

/// Occurrences of one phrase across an index.
struct PhraseMatches {
  /// doc ordinal -> number of contiguous occurrences (>= 1).
  std::map<std::uint32_t, std::size_t> tf;
  std::size_t df() const { return tf.size(); }
};

/// Positional inverted index over the title and body of one language's
/// articles. Title and body are separated by a one-position gap so that no
/// phrase straddles them. Immutable once built.
class InvertedIndex {
 public:
  struct Posting {
    std::uint32_t doc;
    std::vector<std::uint32_t> positions;
  };

  static InvertedIndex build(const CorpusStore& store, Language language,
                             Bm25Params params = {}) {
    InvertedIndex index;
    index.language_ = language;
    index.params_ = params;
    for (const Article* a : store.by_language(language)) index.add_document(a->id, a->title, a->body);
    if (index.docs_.empty()) {
      throw InputError("no articles in language '" + std::string(to_code(language)) + "'");
    }
    double total = 0;
    for (const auto& d : index.docs_) total += static_cast<double>(d.length);
    index.average_length_ = total / static_cast<double>(index.docs_.size());
    return index;
  }

  Language language() const { return language_; }
  const Bm25Params& params() const { return params_; }
  std::size_t size() const { return docs_.size(); }
  const std::string& doc_id(std::uint32_t doc) const { return docs_.at(doc).id; }
  std::size_t doc_length(std::uint32_t doc) const { return docs_.at(doc).length; }
  double average_length() const { return average_length_; }

  std::optional<std::uint32_t> doc_ordinal(const std::string& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
  }

  IndexStats stats() const {
    return {language_, docs_.size(), average_length_, postings_.size()};
  }

  /// Term frequency of a single (already normalized) token in a document.
  std::size_t term_frequency(const std::string& token, std::uint32_t doc) const {
    auto it = postings_.find(token);
    if (it == postings_.end()) return 0;
    const auto& list = it->second;
    auto p = std::lower_bound(list.begin(), list.end(), doc,
                              [](const Posting& x, std::uint32_t d) { return x.doc < d; });
    return p != list.end() && p->doc == doc ? p->positions.size() : 0;
  }

  /// Contiguous occurrences of `phrase` (normalized tokens) in every document.
  PhraseMatches match(const std::vector<std::string>& phrase) const {
    if (phrase.empty()) throw InputError("phrase has no tokens");
    PhraseMatches out;
    std::vector<const std::vector<Posting>*> lists;
    for (const auto& tok : phrase) {
      auto it = postings_.find(tok);
      if (it == postings_.end()) return out;
      lists.push_back(&it->second);
    }
    for (const Posting& head : *lists[0]) {
      std::vector<const Posting*> rest;
      bool all = true;
      for (std::size_t k = 1; k < lists.size() && all; ++k) {
        auto p = std::lower_bound(lists[k]->begin(), lists[k]->end(), head.doc,
                                  [](const Posting& x, std::uint32_t d) { return x.doc < d; });
        if (p == lists[k]->end() || p->doc != head.doc) {
          all = false;
        } else {
          rest.push_back(&*p);
        }
      }
      if (!all) continue;
      std::size_t tf = 0;
      for (std::uint32_t start : head.positions) {
        bool ok = true;
        for (std::size_t k = 0; k < rest.size() && ok; ++k) {
          ok = std::binary_search(rest[k]->positions.begin(), rest[k]->positions.end(),
                                  start + static_cast<std::uint32_t>(k + 1));
        }
        if (ok) ++tf;
      }
      if (tf > 0) out.tf.emplace(head.doc, tf);
    }
    return out;
  }

  /// BM25 weight of a phrase treated as one pseudo-term with the given
  /// statistics.
  double weight(std::size_t tf, std::size_t df, std::size_t doc_len) const {
    if (tf == 0) return 0.0;
    const double n = static_cast<double>(docs_.size());
    const double idf = std::log(1.0 + (n - static_cast<double>(df) + 0.5) / (static_cast<double>(df) + 0.5));
    const double f = static_cast<double>(tf);
    const double norm = 1.0 - params_.b + params_.b * static_cast<double>(doc_len) / average_length_;
    return idf * f * (params_.k1 + 1.0) / (f + params_.k1 * norm);
  }

 private:
  struct Doc {
    std::string id;
    std::size_t length = 0;
  };

  void add_document(const std::string& id, const std::string& title, const std::string& body) {
    const auto doc = static_cast<std::uint32_t>(docs_.size());
    const auto title_tokens = tokenize(title);
    const auto body_tokens = tokenize(body);
    std::uint32_t pos = 0;
    auto add = [&](const std::vector<std::string>& tokens) {
      for (const auto& t : tokens) {
        auto& list = postings_[t];
        if (list.empty() || list.back().doc != doc) list.push_back({doc, {}});
        list.back().positions.push_back(pos++);
      }
    };
    add(title_tokens);
    ++pos;
    add(body_tokens);
    docs_.push_back({id, title_tokens.size() + body_tokens.size()});
    by_id_.emplace(id, doc);
  }

  Language language_ = Language::fr;
  Bm25Params params_;
  std::vector<Doc> docs_;
  std::unordered_map<std::string, std::uint32_t> by_id_;
  std::unordered_map<std::string, std::vector<Posting>> postings_;
  double average_length_ = 0.0;
};

/// BM25 score of `phrase` (raw text, tokenized with the index tokenizer)
/// for one document.
inline double bm25_score(const InvertedIndex& index, const std::string& phrase,
                         const std::string& doc_id) {
  const auto tokens = tokenize(phrase);
  if (tokens.empty()) throw InputError("phrase '" + phrase + "' has no tokens");
  const auto doc = index.doc_ordinal(doc_id);
  if (!doc) throw InputError("document '" + doc_id + "' is not in the index");
  const PhraseMatches m = index.match(tokens);
  auto it = m.tf.find(*doc);
  if (it == m.tf.end()) return 0.0;
  return index.weight(it->second, m.df(), index.doc_length(*doc));
}

struct QuerySpec {
  std::string event_name;
  std::map<Language, std::vector<std::string>> phrases;
  std::size_t min_per_language_volume = 100;

  void validate() const {
    if (event_name.empty()) throw InputError("query spec without event name");
    if (phrases.empty()) throw InputError("event '" + event_name + "' has no phrases");
    for (const auto& [lang, list] : phrases) {
      if (list.empty()) {
        throw InputError("event '" + event_name + "' has no phrase for " + std::string(to_code(lang)));
      }
      for (const auto& p : list) {
        if (tokenize(p).empty()) {
          throw InputError("event '" + event_name + "' has an empty phrase '" + p + "'");
        }
      }
    }
  }
};

enum class SubsetMethod { bm25, external_topic };

inline std::string_view to_string(SubsetMethod m) {
  return m == SubsetMethod::bm25 ? "bm25" : "external_topic";
}

struct ScoredArticle {
  std::string id;
  double score = 0.0;
};

struct LanguageSubset {
  /// Descending score, ties by ascending id.
  std::vector<ScoredArticle> entries;
  bool below_volume = false;
};

struct EventSubset {
  std::string event_name;
  SubsetMethod method = SubsetMethod::bm25;
  std::map<Language, LanguageSubset> languages;

  std::size_t size(Language lang) const {
    auto it = languages.find(lang);
    return it == languages.end() ? 0 : it->second.entries.size();
  }
};

using IndexSet = std::map<Language, InvertedIndex>;

inline void sort_subset(std::vector<ScoredArticle>& entries) {
  std::sort(entries.begin(), entries.end(), [](const ScoredArticle& a, const ScoredArticle& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  });
}

/// OR over the spec's phrases with no score cut-off. A document's score is
/// its best phrase score. Languages under the volume floor are flagged.
inline EventSubset run_event_query(const QuerySpec& spec, const IndexSet& indexes) {
  spec.validate();
  EventSubset subset;
  subset.event_name = spec.event_name;
  subset.method = SubsetMethod::bm25;
  for (const auto& [lang, phrases] : spec.phrases) {
    auto idx = indexes.find(lang);
    if (idx == indexes.end()) {
      throw InputError("no index for language '" + std::string(to_code(lang)) + "'");
    }
    const InvertedIndex& index = idx->second;
    std::map<std::uint32_t, double> best;
    for (const auto& phrase : phrases) {
      const PhraseMatches m = index.match(tokenize(phrase));
      for (const auto& [doc, tf] : m.tf) {
        const double s = index.weight(tf, m.df(), index.doc_length(doc));
        auto [it, inserted] = best.emplace(doc, s);
        if (!inserted) it->second = std::max(it->second, s);
      }
    }
    LanguageSubset ls;
    for (const auto& [doc, s] : best) ls.entries.push_back({index.doc_id(doc), s});
    sort_subset(ls.entries);
    ls.below_volume = ls.entries.size() < spec.min_per_language_volume;
    subset.languages.emplace(lang, std::move(ls));
  }
  return subset;
}

/// Wraps an externally computed subset (e.g. topic-model output). Every id
/// must exist in the store with the stated language.
inline EventSubset load_external_subset(const std::string& event_name,
                                        const std::map<Language, std::vector<std::string>>& ids,
                                        const CorpusStore& store, std::size_t min_volume = 0) {
  EventSubset subset;
  subset.event_name = event_name;
  subset.method = SubsetMethod::external_topic;
  for (const auto& [lang, list] : ids) {
    LanguageSubset ls;
    std::set<std::string> seen;
    for (const auto& id : list) {
      const Article* a = store.find(id);
      if (!a) throw InputError("event '" + event_name + "': unknown article id '" + id + "'");
      if (a->language != lang) {
        throw InputError("event '" + event_name + "': article '" + id + "' is not " +
                         std::string(to_code(lang)));
      }
      if (seen.insert(id).second) ls.entries.push_back({id, 1.0});
    }
    sort_subset(ls.entries);
    ls.below_volume = ls.entries.size() < min_volume;
    subset.languages.emplace(lang, std::move(ls));
  }
  return subset;
}

/// Query file:
/// {"events": [{"name": "...", "min_per_language_volume": 100,
///              "queries": {"fr": ["..."], "de": [...], "it": [...]}}]}
inline std::vector<QuerySpec> load_query_specs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read query file '" + path.string() + "'");
  const auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("events") || !j["events"].is_array()) {
    throw InputError("query file '" + path.string() + "' is not a valid query document");
  }
  std::vector<QuerySpec> specs;
  for (const auto& e : j["events"]) {
    QuerySpec spec;
    try {
      spec.event_name = e.at("name").get<std::string>();
      spec.min_per_language_volume = e.value("min_per_language_volume", std::size_t{100});
      for (const auto& [code, list] : e.at("queries").items()) {
        spec.phrases[require_language(code)] = list.get<std::vector<std::string>>();
      }
    } catch (const nlohmann::json::exception& ex) {
      throw InputError("query file '" + path.string() + "': " + ex.what());
    }
    spec.validate();
    specs.push_back(std::move(spec));
  }
  if (specs.empty()) throw InputError("query file '" + path.string() + "' defines no events");
  return specs;
}

/// External subset file: {"event": "...", "ids": {"fr": [...], ...}}
inline EventSubset load_external_subset_file(const std::filesystem::path& path,
                                             const CorpusStore& store) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read subset file '" + path.string() + "'");
  const auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw InputError("subset file '" + path.string() + "' is not valid JSON");
  }
  std::string name;
  std::map<Language, std::vector<std::string>> ids;
  std::size_t min_volume = 0;
  try {
    name = j.at("event").get<std::string>();
    min_volume = j.value("min_per_language_volume", std::size_t{0});
    for (const auto& [code, list] : j.at("ids").items()) {
      ids[require_language(code)] = list.get<std::vector<std::string>>();
    }
  } catch (const nlohmann::json::exception& ex) {
    throw InputError("subset file '" + path.string() + "': " + ex.what());
  }
  return load_external_subset(name, ids, store, min_volume);
}

inline void write_subset_rows(CsvWriter& csv, const EventSubset& subset) {
  for (const auto& [lang, ls] : subset.languages) {
    for (const auto& e : ls.entries) {
      csv.row({subset.event_name, std::string(to_code(lang)), e.id, format_number(e.score)});
    }
  }
}

}  // namespace newslens
