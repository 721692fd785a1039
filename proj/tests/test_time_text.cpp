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

#include "newslens/language.hpp"
#include "newslens/text.hpp"
#include "newslens/time.hpp"
#include "newslens/unicode.hpp"

using namespace newslens;

namespace {

// Oracle: the ISO week is that of the week's Thursday; its year is the
// Thursday's year and its number counts Thursdays since Jan 1.
std::string iso_label_by_thursday(int y, unsigned m, unsigned d) {
  const std::int64_t day = days_from_civil(y, m, d);
  // 1970-01-01 was a Thursday; weekday 0 = Monday.
  const std::int64_t weekday = ((day + 3) % 7 + 7) % 7;
  const std::int64_t thursday = day - weekday + 3;
  const CivilDate c = civil_from_days(thursday);
  const std::int64_t week = (thursday - days_from_civil(c.year, 1, 1)) / 7 + 1;
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-W%02d", c.year, static_cast<int>(week));
  return buf;
}

}  // namespace

TEST(IsoWeek, KnownBoundaries) {
  EXPECT_EQ(IsoWeek::of(require_iso8601("2019-12-30T00:00:00Z")).label(), "2020-W01");
  EXPECT_EQ(IsoWeek::of(require_iso8601("2021-01-03T23:59:59Z")).label(), "2020-W53");
  EXPECT_EQ(IsoWeek::of(require_iso8601("2019-01-07T00:00:00Z")).label(), "2019-W02");
  EXPECT_EQ(IsoWeek::of(require_iso8601("2019-01-06T23:59:59Z")).label(), "2019-W01");
  EXPECT_EQ(iso_week_from(2020, 53).label(), "2020-W53");
}

TEST(IsoWeek, AgreesWithThursdayRuleOverManyYears) {
  for (std::int64_t day = days_from_civil(1995, 1, 1); day < days_from_civil(2035, 1, 1); ++day) {
    const CivilDate c = civil_from_days(day);
    ASSERT_EQ(IsoWeek::of_day(day).label(), iso_label_by_thursday(c.year, c.month, c.day)) << day;
  }
}

TEST(Time, ParsesOffsetsToUtc) {
  EXPECT_EQ(require_iso8601("2019-03-04T12:00:00+02:00"), require_iso8601("2019-03-04T10:00:00Z"));
  EXPECT_EQ(require_iso8601("2019-03-04T00:30:00-01:00"), require_iso8601("2019-03-04T01:30:00Z"));
  EXPECT_EQ(require_iso8601("2019-03-04T12:00:00.987Z"), require_iso8601("2019-03-04T12:00:00Z"));
  EXPECT_EQ(require_iso8601("2019-03-04T12:00:00"), require_iso8601("2019-03-04T12:00:00Z"));
  EXPECT_FALSE(parse_iso8601("2019-02-30T00:00:00Z"));
  EXPECT_FALSE(parse_iso8601("yesterday"));
  EXPECT_THROW(require_iso8601("2019-13-01T00:00:00Z"), InputError);
  EXPECT_EQ(format_iso8601(require_iso8601("2019-03-04T12:05:09+01:00")), "2019-03-04T11:05:09Z");
}

TEST(Month, OrdinalRoundTripAndLabel) {
  const Month m = Month::of(require_iso8601("2019-12-31T23:59:59Z"));
  EXPECT_EQ(m.label(), "2019-12");
  EXPECT_EQ(Month::from_ordinal(m.ordinal() + 1).label(), "2020-01");
  DateRange r{require_iso8601("2019-11-15T00:00:00Z"), require_iso8601("2020-02-01T00:00:00Z")};
  EXPECT_EQ(r.month_count(), 4);
}

TEST(Language, ParsesCodes) {
  EXPECT_EQ(parse_language("FR"), Language::fr);
  EXPECT_EQ(parse_language("de"), Language::de);
  EXPECT_FALSE(parse_language("en"));
  EXPECT_THROW(require_language("rm"), InputError);
}

TEST(Tokenize, FoldsCaseAndNormalizes) {
  // Decomposed e + combining acute equals the precomposed letter.
  EXPECT_EQ(tokenize("Café CAFÉ café"), (std::vector<std::string>{"café", "café", "café"}));
  EXPECT_EQ(tokenize("Grève féministe, 2019!"), (std::vector<std::string>{"grève", "féministe", "2019"}));
  EXPECT_EQ(tokenize("l'économie d'abord"), (std::vector<std::string>{"l", "économie", "d", "abord"}));
  EXPECT_TRUE(tokenize(" ,.;- ").empty());
  EXPECT_EQ(tokenize("Straße"), std::vector<std::string>{"straße"});
}

TEST(Sentences, SplitsOnTerminatorsAndRespectsAbbreviations) {
  const TermList abbr({"z.B", "Dr", "Nr"});
  const auto s = split_sentences("Dr. Meier kommt. Er bleibt! Nr. 5 ist gut? Ja.", abbr);
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s[0], "Dr. Meier kommt.");
  EXPECT_EQ(s[3], "Ja.");
  EXPECT_EQ(split_sentences("Eins. zwei. Drei", abbr).size(), 2u);
  EXPECT_EQ(split_sentences("Ohne Punkt am Ende", abbr).size(), 1u);
  EXPECT_TRUE(split_sentences("... !!!", abbr).empty());
}

TEST(TermList, LoadIgnoresCommentsAndFolds) {
  const TermList t({"Der", "  "});
  EXPECT_TRUE(t.contains("der"));
  EXPECT_FALSE(t.contains("Der"));
}

TEST(Unicode, CodePointLength) {
  EXPECT_EQ(unicode::length("Zürich"), 6u);
  EXPECT_EQ(unicode::length("a\U0001F600b"), 3u);
}
