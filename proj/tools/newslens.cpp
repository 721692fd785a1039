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

// Command-line front end: ingest, stats, events, analyze, fixture.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "newslens/fixture.hpp"
#include "newslens/pipeline.hpp"

namespace {

int report(const newslens::CommandResult& r) {
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
  for (const auto& p : r.written) std::cout << "wrote " << p.string() << '\n';
  return r.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"newslens: multilingual news coverage analysis"};
  app.require_subcommand(1);

  std::string config_path;
  auto* ingest = app.add_subcommand("ingest", "Load the corpus and write stats and rejections");
  ingest->add_option("--config", config_path, "Run config (JSON)")->required();

  auto* stats = app.add_subcommand("stats", "Print corpus statistics and source quality");
  stats->add_option("--config", config_path, "Run config (JSON)")->required();

  auto* events = app.add_subcommand("events", "Build event subsets");
  events->add_option("--config", config_path, "Run config (JSON)")->required();

  std::string event;
  auto* analyze = app.add_subcommand("analyze", "Run all analyses for one event");
  analyze->add_option("--config", config_path, "Run config (JSON)")->required();
  analyze->add_option("--event", event, "Event name")->required();

  newslens::fixture::FixtureOptions fx;
  std::string fx_out = "fixture";
  std::string data_dir = NEWSLENS_DATA_DIR;
  auto* fixture = app.add_subcommand("fixture", "Generate the synthetic trilingual fixture");
  fixture->add_option("--seed", fx.seed, "Generator seed")->capture_default_str();
  fixture->add_option("--size", fx.size, "Number of corpus records")->capture_default_str();
  fixture->add_option("--out", fx_out, "Output directory")->capture_default_str();
  fixture->add_option("--data-dir", data_dir, "Directory holding the bundled lexica")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*fixture) {
      const auto manifest = newslens::fixture::generate(fx, fx_out, data_dir);
      std::cout << "wrote fixture with " << manifest["records"].get<std::size_t>() << " records to " << fx_out
                << '\n';
      return 0;
    }
    const auto config = newslens::RunConfig::load(config_path);
    if (*ingest) return report(newslens::cmd_ingest(config));
    if (*stats) return report(newslens::cmd_stats(config, std::cout));
    if (*events) return report(newslens::cmd_events(config));
    if (*analyze) return report(newslens::cmd_analyze(config, event));
  } catch (const newslens::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
