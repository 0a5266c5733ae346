// Copyright 2026 The eprlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: run scenario files and dump built-in models.

#include <iostream>

#include <CLI11.hpp>

#include "eprlab/lhv.hpp"
#include "eprlab/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Quantum vs local hidden-variable correlation laboratory"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  unsigned workers = 1;

  auto* run = app.add_subcommand("run", "Run a scenario file and write <name>.csv and <name>.summary.json");
  run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--out-dir", out_dir, "Directory for result files");
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--samples", samples, "Override the Monte Carlo sample count");
  run->add_option("--workers", workers, "Monte Carlo worker threads (0 = all cores); results do not depend on it");

  std::string model_name;
  auto* model = app.add_subcommand("model", "Print a built-in finite hidden-variable model as JSON");
  model->add_option("name", model_name, "Model name")->required()->check(CLI::IsMember({"spin"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (*model) {
    std::cout << eprlab::lhv::to_json(eprlab::lhv::unbounded_spin_model()).dump(2) << "\n";
    return 0;
  }
  return eprlab::cli::run_scenario(scenario_path, out_dir, {seed, samples, workers}, std::cout, std::cerr);
}
