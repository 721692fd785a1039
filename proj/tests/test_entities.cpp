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

#include <gtest/gtest.h>

#include "newslens/entities.hpp"
#include "support.hpp"

using namespace newslens;
using testing_support::TempDir;
using testing_support::write_file;

namespace {

MentionRecord linked(std::string link, std::optional<double> conf) {
  MentionRecord m;
  m.article_id = "a";
  m.surface = "x";
  m.link_id = std::move(link);
  m.link_confidence = conf;
  return m;
}

}  // namespace

TEST(LinkGate, InclusiveAtThreshold) {
  auto out = apply_link_gate({linked("Q1", 0.5), linked("Q2", 0.49999999), linked("Q3", 0.9), linked("Q4", std::nullopt)});
  EXPECT_TRUE(out[0].linked());
  EXPECT_FALSE(out[1].linked());
  EXPECT_TRUE(out[2].linked());
  EXPECT_FALSE(out[3].linked());
  EXPECT_EQ(out.size(), 4u);  // mentions stay, only links drop
}

TEST(LinkGate, HundredMentionsThirtySevenBelow) {
  std::vector<MentionRecord> ms;
  for (int i = 0; i < 100; ++i) ms.push_back(linked("Q" + std::to_string(i), i < 37 ? 0.3 + i * 0.005 : 0.5 + (i - 37) * 0.007));
  const auto out = apply_link_gate(ms);
  EXPECT_EQ(std::count_if(out.begin(), out.end(), [](const MentionRecord& m) { return m.linked(); }), 63);
}

TEST(MentionIngest, ValidatesAgainstCorpus) {
  TempDir dir("mentions");
  CorpusStore store;
  store.add(testing_support::article("a", Language::fr, "La Suisse et la France."));
  std::string lines;
  auto rec = [](nlohmann::json j) { return j.dump() + "\n"; };
  const nlohmann::json ok{{"article_id", "a"}, {"surface", "Suisse"}, {"category", "Location"}, {"start", 3},
                          {"end", 9}, {"link_id", "Q39"}, {"confidence", 0.8}, {"p_pos", 0.2},
                          {"p_neu", 0.5}, {"p_neg", 0.3}};
  lines += rec(ok);
  auto bad = ok;
  bad["article_id"] = "zz";
  lines += rec(bad);
  bad = ok;
  bad["end"] = 40;
  lines += rec(bad);
  bad = ok;
  bad["p_neg"] = 0.4;
  lines += rec(bad);
  bad = ok;
  bad["p_neg"] = 0.3000001;  // within tolerance
  lines += rec(bad);
  bad = ok;
  bad["confidence"] = 1.5;
  lines += rec(bad);
  bad = ok;
  bad.erase("confidence");
  lines += rec(bad);
  bad = ok;
  bad["category"] = "Animal";
  lines += rec(bad);
  bad = ok;
  bad.erase("p_neu");
  lines += rec(bad);
  lines += "garbage\n";
  bad = ok;
  bad["start"] = 9;
  lines += rec(bad);
  write_file(dir / "m.jsonl", lines);

  const auto r = ingest_mentions(dir / "m.jsonl", store);
  EXPECT_EQ(r.accepted.size(), 2u);
  std::vector<std::string> reasons;
  for (const auto& x : r.rejections) reasons.push_back(x.reason_code);
  EXPECT_EQ(reasons, (std::vector<std::string>{"unknown_article", "invalid_span", "sentiment_sum",
                                               "invalid_confidence", "invalid_confidence", "malformed:category",
                                               "invalid_sentiment", "malformed:json", "invalid_span"}));
}

TEST(MentionIngest, SpansCountCodePoints) {
  TempDir dir("mentions2");
  CorpusStore store;
  store.add(testing_support::article("a", Language::de, "Über Österreich"));
  write_file(dir / "m.jsonl",
             R"({"article_id":"a","surface":"Österreich","category":"LOC","start":5,"end":15})" "\n");
  const auto r = ingest_mentions(dir / "m.jsonl", store);
  ASSERT_EQ(r.accepted.size(), 1u);
  EXPECT_FALSE(r.accepted[0].linked());
}

TEST(Gazetteer, LongestMatchOnWordBoundaries) {
  Gazetteer g({{"Union", EntityCategory::organization, "QU", 0.9},
               {"Union européenne", EntityCategory::organization, "Q458", 0.95},
               {"Berne", EntityCategory::location, "Q70", 0.9}});
  const auto a = testing_support::article("a", Language::fr, "L'Union européenne et Berner. berne est loin. Berne.");
  const auto m = g.tag(a);
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m[0].surface, "Union européenne");
  EXPECT_EQ(*m[0].link_id, "Q458");
  EXPECT_EQ(m[0].span.start, 2u);
  EXPECT_EQ(m[0].span.end, 18u);
  // "berne" sentence-initial matches despite case; "Berner" does not.
  EXPECT_EQ(m[1].surface, "berne");
  EXPECT_EQ(m[2].surface, "Berne");
  EXPECT_DOUBLE_EQ(*m[0].link_confidence, 0.95);
}

TEST(Gazetteer, CaseSensitiveInsideSentences) {
  Gazetteer g({{"Verts", EntityCategory::organization, std::nullopt, 1.0}});
  const auto a = testing_support::article("a", Language::fr, "Les verts et les Verts.");
  const auto m = g.tag(a);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].span.start, 17u);
  EXPECT_FALSE(m[0].linked());
}

TEST(Anchoring, ClassesPerLanguage) {
  AnchorTable t;
  t.add("CH", *parse_anchor("swiss"));
  t.add("FRA", *parse_anchor("FR"));
  t.add("AUT", *parse_anchor("at"));
  t.add("ITA", *parse_anchor("IT"));
  t.add("GBR", *parse_anchor("GB"));
  t.add("EU", *parse_anchor("supranational"));
  t.add("EU", *parse_anchor("BE"));  // supranational wins
  auto cls = [&](const char* id, Language l) { return resolve_anchor(linked(id, 0.9), t, l); };
  EXPECT_EQ(cls("CH", Language::it), AnchorClass::swiss);
  EXPECT_EQ(cls("FRA", Language::fr), AnchorClass::neighbor);
  EXPECT_EQ(cls("FRA", Language::de), AnchorClass::foreign_other);
  EXPECT_EQ(cls("AUT", Language::de), AnchorClass::neighbor);
  EXPECT_EQ(cls("AUT", Language::it), AnchorClass::foreign_other);
  EXPECT_EQ(cls("ITA", Language::it), AnchorClass::neighbor);
  EXPECT_EQ(cls("GBR", Language::fr), AnchorClass::foreign_other);
  EXPECT_EQ(cls("EU", Language::fr), AnchorClass::foreign_other);
  EXPECT_EQ(cls("NOPE", Language::fr), AnchorClass::unanchored);
  MentionRecord unlinked;
  EXPECT_EQ(resolve_anchor(unlinked, t, Language::fr), AnchorClass::unanchored);
  EXPECT_THROW(t.add("FRA", *parse_anchor("DE")), InputError);
  EXPECT_FALSE(parse_anchor("Europe"));
}

TEST(Cues, TitleOrBodyCaseInsensitiveWordBounded) {
  CueLexica lex;
  lex.emplace(Language::fr, CueLexicon(Language::fr, {"conseil fédéral", "canton", "PS"}));
  auto art = [](std::string title, std::string body) {
    return testing_support::article("x", Language::fr, std::move(body), "2019-03-04T12:00:00Z", std::move(title));
  };
  EXPECT_TRUE(detect_cues(art("Le Conseil fédéral décide", "Rien ici."), lex));
  EXPECT_TRUE(detect_cues(art("Titre", "Le CANTON vote."), lex));
  EXPECT_FALSE(detect_cues(art("Titre", "Les cantonniers et les psaumes."), lex));
  EXPECT_TRUE(detect_cues(art("Titre", "Le PS, seul."), lex));
  auto de = testing_support::article("y", Language::de, "Bundesrat");
  EXPECT_THROW(detect_cues(de, lex), InputError);
  EXPECT_THROW(CueLexicon(Language::fr, {}), InputError);
}

TEST(Cues, BundledLexicaLoadAndMatch) {
  const std::filesystem::path data(NEWSLENS_DATA_DIR);
  CueLexica lex;
  for (Language l : kLanguages) lex.emplace(l, CueLexicon::load(data / "cues" / (std::string(to_code(l)) + ".txt"), l));
  EXPECT_TRUE(lex.at(Language::de).matches("Der Bundesrat tagt in Bern."));
  EXPECT_TRUE(lex.at(Language::it).matches("Il Consiglio federale e il Ticino."));
  EXPECT_TRUE(lex.at(Language::fr).matches("Les accords bilatéraux avec l'UE."));
  EXPECT_FALSE(lex.at(Language::fr).matches("Le marché de Paris."));
}
