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

// Deterministic synthetic trilingual corpus with its own ground truth.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "newslens/csv.hpp"
#include "newslens/entities.hpp"
#include "newslens/error.hpp"
#include "newslens/language.hpp"
#include "newslens/time.hpp"
#include "newslens/unicode.hpp"

namespace newslens::fixture {

struct FixtureOptions {
  std::uint64_t seed = 42;
  std::size_t size = 1000;
};

inline constexpr std::size_t kPlantedDuplicates = 12;
inline constexpr std::size_t kMinimumSize = 800;
inline constexpr std::size_t kMentionRecords = 500;
inline constexpr std::size_t kMentionViolations = 10;
inline constexpr std::size_t kFaultyOutletArticles = 80;
inline constexpr std::size_t kFaultyOutletFaulty = 7;
inline constexpr int kWeeks = 52;
/// Monday 2019-01-07 (ISO 2019-W02).
inline constexpr std::int64_t kStartMonday = days_from_civil(2019, 1, 7);

/// Portable generator: raw mt19937_64 output only, so the stream does not
/// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  template <typename T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

namespace detail {

struct Vocabulary {
  std::vector<std::string> content;
  std::vector<std::string> function;
  std::vector<std::string> title_words;
};

inline const Vocabulary& vocabulary(Language lang) {
  static const Vocabulary fr{
      {"économie", "marché", "gouvernement", "projet", "semaine", "entreprise", "prix", "ville",
       "région", "école", "hôpital", "route", "train", "budget", "rapport", "décision", "question",
       "débat", "accord", "négociation", "population", "travail", "emploi", "salaire", "impôt",
       "commerce", "exportation", "banque", "tourisme", "montagne", "lac", "hiver", "printemps",
       "automne", "santé", "culture", "musique", "festival", "sport", "équipe", "match", "victoire",
       "étude", "recherche", "université", "données", "réseau", "énergie", "climat", "pollution",
       "transport", "logement", "famille", "enfant", "jeunesse", "retraite", "initiative",
       "parlement", "ministre", "présidente", "annonce", "analyse", "discute", "présente", "propose",
       "critique", "soutient", "rapide", "important", "nouveau", "nouvelle", "grand", "petite",
       "difficile", "public", "local", "national", "international"},
      {"le", "la", "les", "un", "une", "des", "du", "de", "et", "pour", "avec", "dans", "sur",
       "par", "sans", "mais", "ou", "qui", "que", "son", "leur", "cette", "ces", "aux", "au"},
      {"Dossier", "Analyse", "Regard", "Chronique", "Enquête", "Point", "Débat", "Reportage"}};
  static const Vocabulary de{
      {"wirtschaft", "markt", "regierung", "projekt", "woche", "unternehmen", "preis", "stadt",
       "region", "schule", "spital", "strasse", "bahn", "budget", "bericht", "entscheid", "frage",
       "debatte", "vertrag", "verhandlung", "bevölkerung", "arbeit", "stelle", "lohn", "steuer",
       "handel", "export", "bank", "tourismus", "berg", "see", "winter", "sommer", "frühling",
       "herbst", "gesundheit", "kultur", "musik", "festival", "sport", "mannschaft", "spiel", "sieg",
       "studie", "forschung", "universität", "daten", "netz", "energie", "klima", "verkehr",
       "wohnung", "familie", "kinder", "jugend", "rente", "abstimmung", "initiative", "parlament",
       "ministerin", "präsident", "ankündigung", "analyse", "diskutiert", "präsentiert", "kritisiert",
       "unterstützt", "schnell", "wichtig", "neu", "neue", "gross", "kleine", "schwierig",
       "öffentlich", "lokal", "national", "international"},
      {"der", "die", "das", "den", "dem", "ein", "eine", "und", "für", "mit", "in", "auf", "von",
       "bei", "ohne", "aber", "oder", "dass", "sein", "ihre", "diese", "zum", "zur", "im", "am"},
      {"Dossier", "Analyse", "Hintergrund", "Kommentar", "Bericht", "Überblick", "Debatte",
       "Reportage"}};
  static const Vocabulary it{
      {"economia", "mercato", "governo", "progetto", "settimana", "azienda", "prezzo", "città",
       "regione", "scuola", "ospedale", "strada", "treno", "bilancio", "rapporto", "decisione",
       "domanda", "dibattito", "trattato", "negoziato", "popolazione", "lavoro", "impiego",
       "salario", "imposta", "commercio", "esportazione", "banca", "turismo", "montagna", "lago",
       "inverno", "estate", "primavera", "autunno", "salute", "cultura", "musica", "festival",
       "sport", "squadra", "partita", "vittoria", "studio", "ricerca", "università", "dati", "rete",
       "energia", "clima", "trasporto", "alloggio", "famiglia", "bambini", "gioventù", "pensione",
       "votazione", "iniziativa", "parlamento", "ministra", "presidente", "annuncio", "analisi",
       "discute", "presenta", "propone", "critica", "sostiene", "rapido", "importante", "nuovo",
       "nuova", "grande", "piccola", "difficile", "pubblico", "locale", "nazionale",
       "internazionale"},
      {"il", "la", "le", "gli", "un", "una", "del", "della", "di", "e", "per", "con", "in", "su",
       "da", "senza", "ma", "o", "che", "suo", "loro", "questa", "questi", "al", "nel"},
      {"Dossier", "Analisi", "Sguardo", "Cronaca", "Inchiesta", "Punto", "Dibattito", "Reportage"}};
  switch (lang) {
    case Language::fr: return fr;
    case Language::de: return de;
    case Language::it: return it;
  }
  return fr;
}


struct EntityDef {
  std::string link_id;
  std::string anchor;  // empty: linked but deliberately absent from the anchor table
  EntityCategory category;
  std::array<std::string, 3> surface;  // fr, de, it
};

inline const std::vector<EntityDef>& entities() {
  static const std::vector<EntityDef> list{
      {"Q39", "CH", EntityCategory::location, {"Suisse", "Schweiz", "Svizzera"}},
      {"Q142", "FR", EntityCategory::location, {"France", "Frankreich", "Francia"}},
      {"Q183", "DE", EntityCategory::location, {"Allemagne", "Deutschland", "Germania"}},
      {"Q40", "AT", EntityCategory::location, {"Autriche", "Österreich", "Austria"}},
      {"Q38", "IT", EntityCategory::location, {"Italie", "Italien", "Italia"}},
      {"Q145", "GB", EntityCategory::location, {"Royaume-Uni", "Grossbritannien", "Regno Unito"}},
      {"Q30", "US", EntityCategory::location, {"États-Unis", "Vereinigte Staaten", "Stati Uniti"}},
      {"Q458", "supranational", EntityCategory::organization,
       {"Union européenne", "Europäische Union", "Unione europea"}},
      {"QX101", "CH", EntityCategory::person, {"Anna Keller", "Anna Keller", "Anna Keller"}},
      {"QX102", "FR", EntityCategory::person, {"Marc Dubois", "Marc Dubois", "Marc Dubois"}},
      {"QX103", "DE", EntityCategory::person, {"Lena Vogel", "Lena Vogel", "Lena Vogel"}},
      {"QX104", "IT", EntityCategory::person, {"Giulia Bianchi", "Giulia Bianchi", "Giulia Bianchi"}},
      {"QX105", "GB", EntityCategory::person, {"Oliver Smith", "Oliver Smith", "Oliver Smith"}},
      {"QX106", "", EntityCategory::organization, {"Alpina Group", "Alpina Group", "Alpina Group"}},
  };
  return list;
}

enum class Role { brexit, christmas, feminist, feminist_decoy, wolf, background };

struct PlantedMention {
  std::size_t entity = 0;
  std::size_t start = 0;
  std::size_t end = 0;
};

struct Planned {
  Language lang = Language::fr;
  Role role = Role::background;
  int week = 0;
  std::string outlet;
  bool short_body = false;
  std::optional<Language> detected;
  bool cue_body = false;
  bool cue_title = false;
  bool duplicate_source = false;
  UtcTime when{};
  std::string id;
  std::string title;
  std::u32string body;
  std::vector<PlantedMention> mentions;
};

inline std::u32string u32(const std::string& s) { return unicode::to_u32(s); }

inline std::u32string capitalize(std::u32string s) {
  if (!s.empty()) s[0] = static_cast<char32_t>(u_totitle(static_cast<UChar32>(s[0])));
  return s;
}

inline std::u32string random_words(Rng& rng, const Vocabulary& v, std::size_t n) {
  std::u32string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += U' ';
    out += u32(rng.below(5) < 3 ? rng.pick(v.content) : rng.pick(v.function));
  }
  return out;
}

inline std::u32string filler_sentence(Rng& rng, const Vocabulary& v, std::size_t n) {
  return capitalize(random_words(rng, v, n)) + U".";
}

/// Sentence opening with a fixed lead phrase, e.g. an event term.
inline std::u32string lead_sentence(Rng& rng, const Vocabulary& v, const std::string& lead) {
  return u32(lead) + U" " + random_words(rng, v, 4 + rng.below(6)) + U".";
}

struct EventPhrases {
  std::string brexit, christmas, feminist, wolf, cue;
  std::vector<std::string> decoys;
};

inline const EventPhrases& phrases(Language lang) {
  static const EventPhrases fr{"Le Brexit", "Noël", "La grève féministe", "Le loup",
                               "Le conseil fédéral",
                               {"La grève reste longue et le collectif féministe",
                                "Le collectif féministe grève"}};
  static const EventPhrases de{"Der Brexit", "Weihnachten", "Der Frauenstreik", "Der Wolf",
                               "Der Bundesrat", {}};
  static const EventPhrases it{"La Brexit", "Natale", "Lo sciopero femminista", "Il lupo",
                               "Il Consiglio federale",
                               {"Lo sciopero resta lungo e il collettivo femminista"}};
  switch (lang) {
    case Language::fr: return fr;
    case Language::de: return de;
    case Language::it: return it;
  }
  return fr;
}

inline const std::vector<std::string>& outlets(Language lang) {
  static const std::vector<std::string> fr{"journal-leman", "gazette-jura", "courrier-romand"};
  static const std::vector<std::string> de{"zeitung-aare", "bote-rhein", "anzeiger-limmat",
                                           "tagblatt-saentis"};
  static const std::vector<std::string> it{"corriere-ticino", "giornale-lago"};
  switch (lang) {
    case Language::fr: return fr;
    case Language::de: return de;
    case Language::it: return it;
  }
  return fr;
}

inline constexpr const char* kFaultyOutlet = "gazette-jura";
inline constexpr const char* kFooterOutlet = "zeitung-aare";
inline const std::array<std::string, 3> kFooters{
    "Abonnieren Sie unseren Newsletter für tägliche Nachrichten.",
    "Alle Rechte vorbehalten.",
    "Leserbriefe bitte an die Redaktion senden."};

struct EventPlan {
  std::array<std::size_t, 3> step_week{12, 10, 14};  // fr, de, it
  std::size_t brexit_weeks = 26;
  std::array<std::size_t, 3> christmas{40, 50, 20};
  std::array<std::size_t, 3> feminist{12, 15, 6};
  std::array<std::size_t, 3> feminist_decoys{6, 0, 3};
  std::array<std::size_t, 3> wolf{30, 40, 15};
};

inline std::size_t brexit_count(const EventPlan& plan, std::size_t week, Language lang) {
  return week < plan.step_week[index_of(lang)] ? 1 : 4;
}

inline void build_body(Rng& rng, Planned& p) {
  const Vocabulary& v = vocabulary(p.lang);
  const EventPhrases& ph = phrases(p.lang);
  std::vector<std::u32string> sentences;
  std::vector<std::pair<std::size_t, std::size_t>> entity_slots;  // sentence, entity

  if (p.short_body) {
    sentences.push_back(filler_sentence(rng, v, 5 + rng.below(3)));
    sentences.push_back(filler_sentence(rng, v, 5 + rng.below(3)));
  } else {
    const std::size_t n = 4 + rng.below(4);
    for (std::size_t i = 0; i < n; ++i) sentences.push_back(filler_sentence(rng, v, 7 + rng.below(7)));
    auto put = [&](std::u32string s) {
      sentences.insert(sentences.begin() + static_cast<std::ptrdiff_t>(rng.below(sentences.size() + 1)),
                       std::move(s));
    };
    switch (p.role) {
      case Role::brexit: put(lead_sentence(rng, v, ph.brexit)); break;
      case Role::christmas: put(lead_sentence(rng, v, ph.christmas)); break;
      case Role::feminist: put(lead_sentence(rng, v, ph.feminist)); break;
      case Role::feminist_decoy: put(lead_sentence(rng, v, rng.pick(ph.decoys))); break;
      case Role::wolf: put(lead_sentence(rng, v, ph.wolf)); break;
      case Role::background: break;
    }
    if (p.cue_body) put(lead_sentence(rng, v, ph.cue));
    if (p.role == Role::brexit || p.role == Role::wolf) {
      for (int k = 0; k < 2; ++k) {
        const std::size_t at = rng.below(sentences.size() + 1);
        sentences.insert(sentences.begin() + static_cast<std::ptrdiff_t>(at), std::u32string{});
        for (auto& slot : entity_slots) {
          if (slot.first >= at) ++slot.first;
        }
        entity_slots.emplace_back(at, rng.below(entities().size()));
      }
    }
  }

  std::u32string body;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (i) body += U' ';
    auto slot = std::find_if(entity_slots.begin(), entity_slots.end(),
                             [&](const auto& s) { return s.first == i; });
    if (slot == entity_slots.end()) {
      body += sentences[i];
      continue;
    }
    // "<Words> <Entity> <words>." with the entity never sentence-initial.
    body += capitalize(random_words(rng, v, 2 + rng.below(2)));
    body += U' ';
    const std::u32string surface = u32(entities()[slot->second].surface[index_of(p.lang)]);
    p.mentions.push_back({slot->second, body.size(), body.size() + surface.size()});
    body += surface;
    body += U' ';
    body += random_words(rng, v, 2 + rng.below(3));
    body += U'.';
  }
  p.body = std::move(body);
}

inline std::string build_title(Rng& rng, const Planned& p) {
  const Vocabulary& v = vocabulary(p.lang);
  std::u32string t;
  if (p.cue_title) {
    t = u32(phrases(p.lang).cue) + U" " + random_words(rng, v, 3);
  } else {
    t = u32(rng.pick(v.title_words)) + U": " + capitalize(random_words(rng, v, 3 + rng.below(3)));
  }
  return unicode::from_u32(t);
}

inline std::string day_label(std::int64_t day) { return format_date(UtcTime{std::chrono::seconds{day * 86400}}); }

}  // namespace detail

/// Writes a synthetic trilingual corpus plus every input the pipeline needs
/// (queries, external subset, mentions, anchor table, gazetteer, lexica,
/// config) into `out_dir`, and returns the ground-truth manifest (also
/// written as manifest.json). Identical options give byte-identical files.
inline nlohmann::json generate(const FixtureOptions& options, const std::filesystem::path& out_dir,
                               const std::filesystem::path& data_dir) {
  using namespace detail;
  if (options.size < kMinimumSize) {
    throw InputError("fixture size must be at least " + std::to_string(kMinimumSize));
  }
  Rng rng(options.seed);
  const EventPlan plan;
  const std::size_t unique = options.size - kPlantedDuplicates;
  std::array<std::size_t, 3> per_lang{};
  per_lang[index_of(Language::fr)] = unique * 350 / 988;
  per_lang[index_of(Language::it)] = unique * 148 / 988;
  per_lang[index_of(Language::de)] =
      unique - per_lang[index_of(Language::fr)] - per_lang[index_of(Language::it)];

  std::vector<Planned> all;
  for (Language lang : kLanguages) {
    const std::size_t li = index_of(lang);
    std::vector<Planned> lp;
    auto add = [&](Role role, int week) {
      Planned p;
      p.lang = lang;
      p.role = role;
      p.week = week;
      lp.push_back(std::move(p));
    };
    for (std::size_t w = 0; w < plan.brexit_weeks; ++w) {
      for (std::size_t k = 0; k < brexit_count(plan, w, lang); ++k) add(Role::brexit, static_cast<int>(w));
    }
    for (std::size_t k = 0; k < plan.christmas[li]; ++k) add(Role::christmas, 45 + static_cast<int>(rng.below(7)));
    for (std::size_t k = 0; k < plan.feminist[li]; ++k) add(Role::feminist, 20 + static_cast<int>(rng.below(5)));
    for (std::size_t k = 0; k < plan.feminist_decoys[li]; ++k) {
      add(Role::feminist_decoy, 20 + static_cast<int>(rng.below(5)));
    }
    for (std::size_t k = 0; k < plan.wolf[li]; ++k) add(Role::wolf, static_cast<int>(rng.below(kWeeks)));
    if (lp.size() + kFaultyOutletFaulty > per_lang[li]) throw InputError("fixture size too small");
    while (lp.size() < per_lang[li]) add(Role::background, static_cast<int>(rng.below(kWeeks)));

    // Outlets.
    const auto& names = outlets(lang);
    std::vector<std::size_t> order(lp.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    if (lang == Language::fr) {
      std::size_t faulty = 0, assigned = 0;
      for (std::size_t i : order) {
        if (faulty < kFaultyOutletFaulty && lp[i].role == Role::background) {
          lp[i].outlet = kFaultyOutlet;
          if (faulty < 4) {
            lp[i].short_body = true;
          } else {
            lp[i].detected = Language::de;
          }
          ++faulty;
          ++assigned;
        }
      }
      // The faulty outlet only carries background articles so that excluding
      // it leaves every planted event intact.
      for (std::size_t i : order) {
        if (!lp[i].outlet.empty()) continue;
        if (assigned < kFaultyOutletArticles && lp[i].role == Role::background) {
          lp[i].outlet = kFaultyOutlet;
          ++assigned;
        } else {
          lp[i].outlet = rng.below(2) ? names[0] : names[2];
        }
      }
      if (assigned < kFaultyOutletArticles) throw InputError("fixture size too small");
    } else if (lang == Language::de) {
      const std::size_t footer_n = lp.size() >= 240 ? 120 : lp.size() / 2;
      for (std::size_t k = 0; k < order.size(); ++k) {
        lp[order[k]].outlet = k < footer_n ? names[0] : names[1 + rng.below(names.size() - 1)];
      }
    } else {
      for (std::size_t i : order) lp[i].outlet = rng.pick(names);
    }

    // Cues: about a third of the analysed-event articles carry one in the body.
    for (auto& p : lp) {
      if (p.role == Role::brexit || p.role == Role::wolf) p.cue_body = rng.below(3) == 0;
    }
    all.insert(all.end(), std::make_move_iterator(lp.begin()), std::make_move_iterator(lp.end()));
  }

  // One French Brexit article has its cue in the title only.
  for (auto& p : all) {
    if (p.lang == Language::fr && p.role == Role::brexit && !p.cue_body) {
      p.cue_title = true;
      break;
    }
  }

  for (auto& p : all) {
    const std::int64_t day = kStartMonday + 7 * p.week + static_cast<std::int64_t>(rng.below(7));
    p.when = UtcTime{std::chrono::seconds{day * 86400 + static_cast<std::int64_t>(rng.below(86400))}};
    build_body(rng, p);
    p.title = build_title(rng, p);
  }

  std::stable_sort(all.begin(), all.end(), [](const Planned& a, const Planned& b) {
    if (a.when != b.when) return a.when < b.when;
    return index_of(a.lang) < index_of(b.lang);
  });
  std::array<std::size_t, 3> seq{};
  for (auto& p : all) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%05zu", ++seq[index_of(p.lang)]);
    p.id = std::string(to_code(p.lang)) + "-" + buf;
  }

  // Footers, assigned in publication order within the footer outlet.
  std::vector<Planned*> footer_articles;
  for (auto& p : all) {
    if (p.outlet == kFooterOutlet) footer_articles.push_back(&p);
  }
  const std::size_t rare_n = std::max<std::size_t>(3, footer_articles.size() / 20);
  std::array<std::size_t, 3> footer_counts{};
  std::map<const Planned*, std::vector<std::size_t>> footers_of;
  for (std::size_t k = 0; k < footer_articles.size(); ++k) {
    auto& f = footers_of[footer_articles[k]];
    f.push_back(0);
    if (k % 2 == 0) f.push_back(1);
    if (k < rare_n) f.push_back(2);
    for (std::size_t x : f) ++footer_counts[x];
  }

  auto record = [&](const Planned& p) {
    std::string body = unicode::from_u32(p.body);
    if (auto it = footers_of.find(&p); it != footers_of.end()) {
      for (std::size_t x : it->second) body += "\n" + kFooters[x];
    }
    nlohmann::json j{{"id", p.id},
                     {"outlet", p.outlet},
                     {"language", std::string(to_code(p.lang))},
                     {"published_at", format_iso8601(p.when)},
                     {"title", p.title},
                     {"body", body}};
    if (p.detected) j["detected_language"] = std::string(to_code(*p.detected));
    return j;
  };

  // Duplicate-id lines, each placed after its original.
  std::vector<std::size_t> background;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i].role == Role::background && all[i].outlet != kFaultyOutlet) background.push_back(i);
  }
  rng.shuffle(background);
  std::vector<std::pair<std::size_t, std::size_t>> dups;  // (emit after unique index, source)
  for (std::size_t k = 0; k < kPlantedDuplicates; ++k) {
    const std::size_t src = background[k];
    dups.emplace_back(src + rng.below(all.size() - src), src);
  }
  std::sort(dups.begin(), dups.end());

  std::filesystem::create_directories(out_dir);
  std::vector<std::size_t> duplicate_lines;
  {
    auto out = open_output(out_dir / "corpus.jsonl");
    std::size_t line = 0, d = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
      out << record(all[i]).dump() << '\n';
      ++line;
      for (; d < dups.size() && dups[d].first == i; ++d) {
        auto j = record(all[dups[d].second]);
        j["title"] = j["title"].get<std::string>() + " (2)";
        out << j.dump() << '\n';
        duplicate_lines.push_back(++line);
      }
    }
  }

  // Mentions: the first 490 planted mentions plus 10 invalid records.
  std::vector<nlohmann::json> mentions;
  std::size_t below_threshold = 0;
  const std::size_t valid_target = kMentionRecords - kMentionViolations;
  std::vector<std::pair<const Planned*, PlantedMention>> planted;
  for (const auto& p : all) {
    for (const auto& m : p.mentions) planted.emplace_back(&p, m);
  }
  if (planted.size() < valid_target) throw Error("fixture planted too few mentions");
  for (std::size_t k = 0; k < valid_target; ++k) {
    const auto& [p, m] = planted[k];
    const EntityDef& e = entities()[m.entity];
    const std::size_t conf = 300 + rng.below(701);
    if (conf < 500) ++below_threshold;
    const std::size_t pos = rng.below(1001);
    const std::size_t neu = rng.below(1001 - pos);
    mentions.push_back({{"article_id", p->id},
                        {"surface", e.surface[index_of(p->lang)]},
                        {"category", std::string(to_string(e.category))},
                        {"start", m.start},
                        {"end", m.end},
                        {"link_id", e.link_id},
                        {"confidence", static_cast<double>(conf) / 1000.0},
                        {"p_pos", static_cast<double>(pos) / 1000.0},
                        {"p_neu", static_cast<double>(neu) / 1000.0},
                        {"p_neg", static_cast<double>(1000 - pos - neu) / 1000.0}});
  }
  std::vector<std::pair<nlohmann::json, std::string>> bad;
  for (int k = 0; k < 4; ++k) {
    auto j = mentions[rng.below(mentions.size())];
    j["p_pos"] = 0.5;
    j["p_neu"] = 0.3;
    j["p_neg"] = 0.3;
    bad.emplace_back(j, "sentiment_sum");
  }
  for (int k = 0; k < 3; ++k) {
    auto j = mentions[rng.below(mentions.size())];
    const Planned* owner = nullptr;
    for (const auto& p : all) {
      if (p.id == j["article_id"]) owner = &p;
    }
    j["start"] = owner->body.size();
    j["end"] = owner->body.size() + 5;
    bad.emplace_back(j, "invalid_span");
  }
  for (int k = 0; k < 3; ++k) {
    auto j = mentions[rng.below(mentions.size())];
    j["article_id"] = "xx-" + std::to_string(90000 + k);
    bad.emplace_back(j, "unknown_article");
  }
  std::vector<std::pair<std::size_t, std::string>> mention_rejections;
  for (auto& [j, reason] : bad) {
    const std::size_t at = rng.below(mentions.size() + 1);
    mentions.insert(mentions.begin() + static_cast<std::ptrdiff_t>(at), j);
    for (auto& r : mention_rejections) {
      if (r.first >= at + 1) ++r.first;
    }
    mention_rejections.emplace_back(at + 1, reason);
  }
  std::sort(mention_rejections.begin(), mention_rejections.end());
  {
    auto out = open_output(out_dir / "mentions.jsonl");
    for (const auto& j : mentions) out << j.dump() << '\n';
  }

  {
    auto out = open_output(out_dir / "anchors.tsv");
    out << "# link_id\tanchor\n";
    for (const auto& e : entities()) {
      if (!e.anchor.empty()) out << e.link_id << '\t' << e.anchor << '\n';
    }
  }
  {
    auto out = open_output(out_dir / "gazetteer.tsv");
    out << "# surface\tcategory\tlink_id\tconfidence\n";
    std::set<std::string> seen;
    for (const auto& e : entities()) {
      for (const auto& s : e.surface) {
        if (seen.insert(s).second) out << s << '\t' << to_string(e.category) << '\t' << e.link_id << "\t0.9\n";
      }
    }
  }

  // Ground truth per event.
  std::map<std::string, std::map<std::string, std::vector<std::string>>> event_ids;
  std::vector<std::string> cue_articles;
  std::string cue_title_article;
  for (const auto& p : all) {
    const std::string code(to_code(p.lang));
    switch (p.role) {
      case Role::brexit: event_ids["brexit"][code].push_back(p.id); break;
      case Role::christmas: event_ids["christmas"][code].push_back(p.id); break;
      case Role::feminist: event_ids["feminist_strike"][code].push_back(p.id); break;
      case Role::wolf: event_ids["swiss_wolf"][code].push_back(p.id); break;
      default: break;
    }
    if (p.cue_body || p.cue_title) cue_articles.push_back(p.id);
    if (p.cue_title) cue_title_article = p.id;
  }

  {
    nlohmann::json q;
    q["events"] = nlohmann::json::array(
        {{{"name", "brexit"},
          {"min_per_language_volume", 20},
          {"queries", {{"fr", {"brexit"}}, {"de", {"brexit"}}, {"it", {"brexit"}}}}},
         {{"name", "christmas"},
          {"min_per_language_volume", 30},
          {"queries", {{"fr", {"noël"}}, {"de", {"weihnachten"}}, {"it", {"natale"}}}}},
         {{"name", "feminist_strike"},
          {"min_per_language_volume", 10},
          {"queries", {{"fr", {"grève féministe"}}, {"de", {"frauenstreik"}}, {"it", {"sciopero femminista"}}}}}});
    auto out = open_output(out_dir / "queries.json");
    out << q.dump(2) << '\n';
  }
  {
    nlohmann::json w{{"event", "swiss_wolf"}, {"min_per_language_volume", 20}, {"ids", event_ids["swiss_wolf"]}};
    auto out = open_output(out_dir / "swiss_wolf.json");
    out << w.dump(2) << '\n';
  }

  nlohmann::json lexica_paths;
  for (const char* kind : {"function_words", "abbreviations", "cues"}) {
    for (Language lang : kLanguages) {
      const std::string file = std::string(to_code(lang)) + ".txt";
      const auto src = data_dir / kind / file;
      const auto rel = std::filesystem::path("lexica") / kind / file;
      std::ifstream in(src, std::ios::binary);
      if (!in) throw InputError("cannot read lexicon '" + src.string() + "'");
      auto out = open_output(out_dir / rel);
      out << in.rdbuf();
      lexica_paths[kind][std::string(to_code(lang))] = rel.generic_string();
    }
  }
  {
    nlohmann::json c{{"corpus", "corpus.jsonl"},
                     {"languages", {"fr", "de", "it"}},
                     {"queries", "queries.json"},
                     {"external_subsets", {"swiss_wolf.json"}},
                     {"anchors", "anchors.tsv"},
                     {"cue_lexica", lexica_paths["cues"]},
                     {"function_words", lexica_paths["function_words"]},
                     {"abbreviations", lexica_paths["abbreviations"]},
                     {"annotations", "mentions.jsonl"},
                     {"gazetteer", "gazetteer.tsv"},
                     {"link_threshold", kDefaultLinkThreshold},
                     {"cpd",
                      {{"penalty_multipliers", {0.5, 1.0, 2.0}},
                       {"baseline_multiplier", 1.0},
                       {"hazard", 1.0 / 52.0},
                       {"reset_max", 3},
                       {"window", 3},
                       {"loess_span", 0.25}}},
                     {"lpsr_mode", "article_mean"},
                     {"sentiment_granularity", "weekly"},
                     {"output_dir", "out"},
                     {"seed", options.seed}};
    auto out = open_output(out_dir / "config.json");
    out << c.dump(2) << '\n';
  }

  // Manifest.
  nlohmann::json m;
  m["seed"] = options.seed;
  m["records"] = all.size() + kPlantedDuplicates;
  m["accepted"] = all.size();
  m["duplicate_lines"] = duplicate_lines;
  for (Language lang : kLanguages) {
    const std::string code(to_code(lang));
    m["articles"][code] = per_lang[index_of(lang)];
    m["outlets"][code] = outlets(lang).size();
  }
  m["window"] = {{"first_monday", day_label(kStartMonday)}, {"weeks", kWeeks}};
  {
    std::size_t total = 0, faulty = 0;
    for (const auto& p : all) {
      if (p.outlet != kFaultyOutlet) continue;
      ++total;
      if (p.short_body || p.detected) ++faulty;
    }
    m["faulty_outlet"] = {{"outlet", kFaultyOutlet},
                          {"articles", total},
                          {"faulty", faulty},
                          {"faulty_ratio", static_cast<double>(faulty) / static_cast<double>(total)},
                          {"excluded", true}};
  }
  {
    nlohmann::json footers = nlohmann::json::array();
    const double n = static_cast<double>(footer_articles.size());
    for (std::size_t x = 0; x < kFooters.size(); ++x) {
      const bool removed = footer_counts[x] >= 3 && static_cast<double>(footer_counts[x]) >= 0.10 * n;
      footers.push_back({{"line", kFooters[x]}, {"articles", footer_counts[x]}, {"removed", removed}});
    }
    m["boilerplate"] = {{"outlet", kFooterOutlet}, {"articles", footer_articles.size()}, {"footers", footers}};
  }
  nlohmann::json events;
  for (const auto& [name, by_lang] : event_ids) {
    nlohmann::json e;
    e["method"] = name == "swiss_wolf" ? "external_topic" : "bm25";
    for (const auto& [code, ids] : by_lang) e["counts"][code] = ids.size();
    events[name] = e;
  }
  events["brexit"]["min_per_language_volume"] = 20;
  events["christmas"]["min_per_language_volume"] = 30;
  events["feminist_strike"]["min_per_language_volume"] = 10;
  events["swiss_wolf"]["min_per_language_volume"] = 20;
  events["feminist_strike"]["decoys"] = {{"fr", plan.feminist_decoys[0]}, {"it", plan.feminist_decoys[2]}};
  for (Language lang : kLanguages) {
    const std::string code(to_code(lang));
    std::vector<std::size_t> counts;
    for (std::size_t w = 0; w < plan.brexit_weeks; ++w) counts.push_back(brexit_count(plan, w, lang));
    const std::size_t step = plan.step_week[index_of(lang)];
    events["brexit"]["weekly_counts"][code] = counts;
    events["brexit"]["first_week"][code] = IsoWeek::of_day(kStartMonday).label();
    events["brexit"]["change_index"][code] = step;
    events["brexit"]["change_week"][code] = IsoWeek::of_day(kStartMonday + 7 * static_cast<std::int64_t>(step)).label();
  }
  events["brexit"]["consensus_tolerance_weeks"] = 1;
  m["events"] = events;
  {
    nlohmann::json rej = nlohmann::json::array();
    for (const auto& [line, reason] : mention_rejections) rej.push_back({{"line", line}, {"reason", reason}});
    m["mentions"] = {{"records", mentions.size()},
                     {"accepted", valid_target},
                     {"below_link_threshold", below_threshold},
                     {"rejections", rej}};
  }
  m["cue_articles"] = cue_articles;
  m["cue_title_only_article"] = cue_title_article;
  {
    auto out = open_output(out_dir / "manifest.json");
    out << m.dump(2) << '\n';
  }
  return m;
}

}  // namespace newslens::fixture
