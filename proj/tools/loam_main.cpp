// Copyright 2026 The loam Authors.
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

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "loam/cmd.hpp"

int main(int argc, char** argv) {
  CLI::App app{"loam: deterministic character-terrain interaction simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = "out";
  std::vector<std::string> overrides;
  CLI::App* run = app.add_subcommand("run", "Simulate a scenario file and write run artifacts");
  run->add_option("scenario", scenario_path, "Scenario file (.scn)")->required();
  run->add_option("--out", out_dir, "Artifact output directory");
  run->add_option("--set", overrides, "Override a scenario value, e.g. --set material.preset=mud");

  CLI::App* presets = app.add_subcommand("presets", "List terrain material presets");

  int grid = 512;
  int frames = 600;
  CLI::App* bench = app.add_subcommand("bench", "Time simulation steps on a synthetic scenario");
  bench->add_option("--grid", grid, "Height-field resolution (128|256|512|1024)");
  bench->add_option("--frames", frames, "Number of simulation steps to time");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    return loam::cmd_run(scenario_path, out_dir, overrides, std::cout, std::cerr);
  }
  if (presets->parsed()) {
    return loam::cmd_presets(std::cout);
  }
  if (bench->parsed()) {
    return loam::cmd_bench(grid, frames, std::cout, std::cerr);
  }
  return 0;
}
