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

#include <cstdlib>
#include <map>
#include <sstream>

#include "newslens/fixture.hpp"
#include "newslens/pipeline.hpp"
#include "support.hpp"

using namespace newslens;
using testing_support::read_file;
using testing_support::TempDir;
using testing_support::write_file;

namespace {

const std::filesystem::path kBundled(NEWSLENS_FIXTURE_DIR);

std::map<std::string, std::string> tree(const std::filesystem::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out[std::filesystem::relative(e.path(), root).generic_string()] = read_file(e.path());
  }
  return out;
}

RunConfig bundled_config(const std::filesystem::path& out) {
  RunConfig c = RunConfig::load(kBundled / "config.json");
  c.output_dir = out;
  return c;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(NEWSLENS_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, MissingPathNamesTheFile) {
  TempDir dir("cfg");
  write_file(dir / "config.json", R"({"corpus": "nowhere.jsonl"})");
  try {
    RunConfig::load(dir / "config.json");
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("nowhere.jsonl"), std::string::npos);
  }
  EXPECT_THROW(RunConfig::load(dir / "absent.json"), InputError);
  write_file(dir / "c.jsonl", "");
  write_file(dir / "bad.json", R"({"corpus": "c.jsonl", "lpsr_mode": "median"})");
  EXPECT_THROW(RunConfig::load(dir / "bad.json"), InputError);
}

TEST(Config, EnvironmentOverridesOutputDir) {
  TempDir dir("cfg-env");
  write_file(dir / "c.jsonl", "");
  write_file(dir / "config.json", R"({"corpus": "c.jsonl", "output_dir": "here"})");
  EXPECT_EQ(RunConfig::load(dir / "config.json").output_dir, dir / "here");
  ::setenv("NEWSLENS_OUTPUT_DIR", "/tmp/elsewhere", 1);
  EXPECT_EQ(RunConfig::load(dir / "config.json").output_dir, "/tmp/elsewhere");
  ::unsetenv("NEWSLENS_OUTPUT_DIR");
}

TEST(Fixture, RegenerationIsByteIdenticalAndMatchesBundle) {
  TempDir a("fx-a"), b("fx-b");
  fixture::generate({}, a.path(), NEWSLENS_DATA_DIR);
  fixture::generate({}, b.path(), NEWSLENS_DATA_DIR);
  const auto ta = tree(a.path());
  EXPECT_EQ(ta, tree(b.path()));
  auto bundled = tree(kBundled);
  std::erase_if(bundled, [](const auto& kv) { return kv.first.rfind("out/", 0) == 0; });
  EXPECT_EQ(ta, bundled);
}

TEST(Fixture, SizeAndSeedControlTheCorpus) {
  TempDir a("fx-size");
  const auto m = fixture::generate({7, 900}, a.path(), NEWSLENS_DATA_DIR);
  EXPECT_EQ(m["records"].get<std::size_t>(), 900u);
  std::istringstream lines(read_file(a / "corpus.jsonl"));
  std::size_t n = 0;
  for (std::string line; std::getline(lines, line);) ++n;
  EXPECT_EQ(n, 900u);
  EXPECT_THROW(fixture::generate({7, 100}, a.path(), NEWSLENS_DATA_DIR), InputError);
}

TEST(Pipeline, StatsReportsFaultySource) {
  TempDir out("stats");
  std::ostringstream text;
  const auto r = cmd_stats(bundled_config(out.path()), text);
  const auto manifest = nlohmann::json::parse(read_file(kBundled / "manifest.json"));
  const std::string sq = read_file(out / "stats/source_quality.csv");
  EXPECT_NE(sq.find(manifest["faulty_outlet"]["outlet"].get<std::string>()), std::string::npos);
  EXPECT_NE(text.str().find("988"), std::string::npos);
  EXPECT_LE(r.exit_code(), 1);
}

TEST(Pipeline, EventCountsMatchManifest) {
  TempDir out("events");
  const RunConfig config = bundled_config(out.path());
  const auto manifest = nlohmann::json::parse(read_file(kBundled / "manifest.json"));
  const LoadedCorpus c = load_corpus(config);
  std::vector<std::string> warnings;
  const auto events = resolve_events(config, analysis_store(config, c.store), warnings);
  ASSERT_EQ(events.size(), manifest["events"].size());
  for (const auto& e : events) {
    const auto& expected = manifest["events"][e.event_name];
    for (const auto& [lang, ls] : e.languages) {
      const auto n = expected["counts"][std::string(to_code(lang))].get<std::size_t>();
      EXPECT_EQ(ls.entries.size(), n) << e.event_name << " " << to_code(lang);
      EXPECT_EQ(ls.below_volume, n < expected["min_per_language_volume"].get<std::size_t>());
    }
  }
}

TEST(Pipeline, AnalyzeIsDeterministic) {
  TempDir a("an-a"), b("an-b");
  const auto ra = cmd_analyze(bundled_config(a.path()), "brexit");
  cmd_analyze(bundled_config(b.path()), "brexit");
  EXPECT_EQ(ra.exit_code(), 0);
  const auto ta = tree(a.path());
  EXPECT_EQ(ta.size(), 11u);
  EXPECT_EQ(ta, tree(b.path()));
  EXPECT_THROW(cmd_analyze(bundled_config(a.path()), "no_such_event"), InputError);
}

TEST(Pipeline, EventWithoutLinkedMentionsWarns) {
  TempDir dir("nomentions");
  for (const char* f : {"corpus.jsonl", "queries.json", "swiss_wolf.json", "anchors.tsv"}) {
    std::filesystem::copy_file(kBundled / f, dir / f);
  }
  std::filesystem::copy(kBundled / "lexica", dir / "lexica", std::filesystem::copy_options::recursive);
  auto cfg = nlohmann::json::parse(read_file(kBundled / "config.json"));
  cfg.erase("annotations");
  cfg.erase("gazetteer");
  write_file(dir / "config.json", cfg.dump());
  const auto r = cmd_analyze(RunConfig::load(dir / "config.json"), "brexit");
  EXPECT_EQ(r.exit_code(), 1);
  const std::string dom = read_file(dir / "out/analyze/brexit/domestication.csv");
  EXPECT_EQ(std::count(dom.begin(), dom.end(), '\n'), 1);
  const std::string lpsr = read_file(dir / "out/analyze/brexit/lpsr.csv");
  EXPECT_EQ(std::count(lpsr.begin(), lpsr.end(), '\n'), 1);
}

TEST(Cli, ExitCodes) {
  TempDir dir("cli");
  EXPECT_EQ(run_cli("stats --config " + (dir / "missing.json").string()), 2);
  write_file(dir / "c.jsonl", "");
  write_file(dir / "q.json", R"({"events": []})");
  write_file(dir / "config.json", R"({"corpus": "c.jsonl", "queries": "q.json"})");
  EXPECT_EQ(run_cli("events --config " + (dir / "config.json").string()), 2);
  EXPECT_EQ(run_cli("bogus"), 2);
  ::setenv("NEWSLENS_OUTPUT_DIR", (dir / "out").c_str(), 1);
  EXPECT_EQ(run_cli("analyze --config " + (kBundled / "config.json").string() + " --event brexit"), 0);
  EXPECT_EQ(run_cli("analyze --config " + (kBundled / "config.json").string() + " --event christmas"), 1);
  ::unsetenv("NEWSLENS_OUTPUT_DIR");
  EXPECT_TRUE(std::filesystem::exists(dir / "out/analyze/brexit/consensus.csv"));
}
