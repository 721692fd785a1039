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

#include <cmath>

#include "newslens/domestication.hpp"
#include "newslens/sentiment.hpp"
#include "support.hpp"

using namespace newslens;

TEST(Profile, PlainShares) {
  const auto p = article_profile("a", Language::fr, {2, 1, 1}, false);
  ASSERT_TRUE(p);
  EXPECT_DOUBLE_EQ(p->p_swiss, 0.5);
  EXPECT_DOUBLE_EQ(p->p_neighbor, 0.25);
  EXPECT_DOUBLE_EQ(p->p_other, 0.25);
  EXPECT_FALSE(article_profile("a", Language::fr, {0, 0, 0}, true));
}

TEST(Profile, CueBonusRedistributesProportionally) {
  // 1 Swiss, 1 neighbour, 2 other, cue: p_swiss 0.25 -> 0.35, rest 0.65 split 1:2.
  const auto p = *article_profile("a", Language::de, {1, 1, 2}, true);
  EXPECT_NEAR(p.p_swiss, 0.35, 1e-12);
  EXPECT_NEAR(p.p_neighbor, 0.65 / 3.0, 1e-12);
  EXPECT_NEAR(p.p_other, 1.3 / 3.0, 1e-12);
  EXPECT_TRUE(p.cue_applied);
}

TEST(Profile, CueClipsAndOnlySwiss) {
  const auto only = *article_profile("a", Language::it, {3, 0, 0}, true);
  EXPECT_EQ(only.p_swiss, 1.0);
  EXPECT_EQ(only.p_neighbor + only.p_other, 0.0);
  const auto mostly = *article_profile("a", Language::it, {19, 1, 0}, true);
  EXPECT_EQ(mostly.p_swiss, 1.0);
  EXPECT_NEAR(mostly.p_neighbor, 0.0, 1e-15);
  const auto none = *article_profile("a", Language::it, {0, 2, 0}, true);
  EXPECT_NEAR(none.p_swiss, 0.1, 1e-15);
  EXPECT_NEAR(none.p_neighbor, 0.9, 1e-15);
}

TEST(Lpsr, ClosedFormExamples) {
  EXPECT_DOUBLE_EQ(lpsr(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(lpsr(3, 0), std::log(4.0));
  EXPECT_DOUBLE_EQ(lpsr(0, 3), -std::log(4.0));
  const auto r = article_lpsr("a", Language::fr, {5, 2, 1});
  EXPECT_EQ(r.m_prox, 2u);
  EXPECT_EQ(r.m_other, 1u);
  EXPECT_DOUBLE_EQ(r.lpsr, std::log(1.5));
}

TEST(Weekly, ArticleMeanAndPooledLpsr) {
  const std::map<std::string, UtcTime> when{{"a", require_iso8601("2019-03-04T08:00:00Z")},
                                            {"b", require_iso8601("2019-03-10T20:00:00Z")},
                                            {"c", require_iso8601("2019-03-11T00:00:00Z")}};
  auto ts = [&](const std::string& id) { return when.at(id); };
  const std::vector<LpsrRecord> recs{article_lpsr("a", Language::fr, {0, 3, 0}),
                                     article_lpsr("b", Language::fr, {0, 0, 1}),
                                     article_lpsr("c", Language::fr, {1, 0, 0})};
  const auto mean = weekly_lpsr(recs, Language::fr, ts);
  ASSERT_EQ(mean.size(), 2u);
  EXPECT_EQ(mean[0].week.label(), "2019-W10");
  EXPECT_EQ(mean[0].article_count, 2u);
  EXPECT_DOUBLE_EQ(mean[0].mean_lpsr, (std::log(4.0) + std::log(0.5)) / 2.0);
  EXPECT_DOUBLE_EQ(mean[1].mean_lpsr, 0.0);
  const auto pooled = weekly_lpsr(recs, Language::fr, ts, LpsrMode::pooled);
  EXPECT_DOUBLE_EQ(pooled[0].mean_lpsr, std::log(4.0 / 2.0));

  const std::vector<ArticleProfile> profiles{*article_profile("a", Language::fr, {1, 1, 0}, false),
                                             *article_profile("b", Language::fr, {0, 0, 1}, false)};
  const auto wp = weekly_profiles(profiles, Language::fr, ts);
  ASSERT_EQ(wp.size(), 1u);
  EXPECT_DOUBLE_EQ(wp[0].p_swiss, 0.25);
  EXPECT_DOUBLE_EQ(wp[0].p_other, 0.5);
  EXPECT_TRUE(weekly_profiles(profiles, Language::de, ts).empty());
}

TEST(Sentiment, ScoreAndValidation) {
  EXPECT_DOUBLE_EQ(mention_score(0.7, 0.2, 0.1), 0.6);
  EXPECT_DOUBLE_EQ(mention_score(0.0, 0.0, 1.0), -1.0);
  EXPECT_THROW(mention_score(0.5, 0.3, 0.3), InputError);
  EXPECT_THROW(mention_score(1.2, -0.1, -0.1), InputError);
  EXPECT_NO_THROW(mention_score(0.5, 0.3, 0.2000005));
}

TEST(Sentiment, EntitySeriesBucketsAndSupport) {
  CorpusStore store;
  store.add(testing_support::article("a", Language::fr, "x", "2019-03-04T00:00:00Z"));
  store.add(testing_support::article("b", Language::fr, "x", "2019-03-20T00:00:00Z"));
  store.add(testing_support::article("d", Language::de, "x", "2019-03-04T00:00:00Z"));
  auto m = [](const char* id, const char* link, SentimentProbs p) {
    MentionRecord r;
    r.article_id = id;
    r.link_id = link;
    r.link_confidence = 0.9;
    r.sentiment = p;
    return r;
  };
  std::vector<MentionRecord> ms;
  for (int i = 0; i < 5; ++i) ms.push_back(m("a", "Q39", {0.6, 0.4, 0.0}));
  ms.push_back(m("b", "Q39", {0.0, 0.5, 0.5}));
  ms.push_back(m("d", "Q39", {1.0, 0.0, 0.0}));
  ms.push_back(m("a", "Q142", {1.0, 0.0, 0.0}));
  const auto weekly = entity_series(ms, store, "Q39", Language::fr, Granularity::weekly);
  ASSERT_EQ(weekly.points.size(), 2u);
  EXPECT_EQ(weekly.points[0].bucket.label(), "2019-W10");
  EXPECT_DOUBLE_EQ(weekly.points[0].mean_score, 0.6);
  EXPECT_FALSE(weekly.points[0].low_support);
  EXPECT_TRUE(weekly.points[1].low_support);
  const auto monthly = entity_series(ms, store, "Q39", Language::fr, Granularity::monthly);
  ASSERT_EQ(monthly.points.size(), 1u);
  EXPECT_EQ(monthly.points[0].bucket.label(), "2019-03");
  EXPECT_DOUBLE_EQ(monthly.points[0].mean_score, (5 * 0.6 - 0.5) / 6.0);
  EXPECT_THROW(entity_series(ms, store, "Q1", Language::fr, Granularity::weekly), InputError);
}
