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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "loam/cmd.hpp"

namespace loam {
namespace {

struct TempDir {
  std::filesystem::path path;

  explicit TempDir(const char* name) : path(std::filesystem::temp_directory_path() / name) {
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

std::string write_scenario(const TempDir& dir, const std::string& text) {
  const std::filesystem::path p = dir.path / "scenario.scn";
  std::ofstream out(p);
  out << text;
  return p.string();
}

TEST_CASE("cmd_run completes a short scenario and reports its summary") {
  TempDir dir("loam_test_cli_run");
  const std::string scn = write_scenario(
      dir, "[terrain]\nresolution = 128\n[material]\npreset = mud\n[run]\nduration = 1\n");
  std::ostringstream out;
  std::ostringstream err;
  const int rc = cmd_run(scn, (dir.path / "out").string(), {}, out, err);
  CHECK(rc == 0);
  CHECK(err.str().empty());
  CHECK(out.str().find("end_reason: completed") != std::string::npos);
  CHECK(out.str().find("frames: 60") != std::string::npos);
  CHECK(out.str().find("total_carved_m3:") != std::string::npos);
  CHECK(out.str().find("artifacts:") != std::string::npos);
  CHECK(std::filesystem::exists(dir.path / "out" / "trace.csv"));
  CHECK(std::filesystem::exists(dir.path / "out" / "metrics.txt"));
}

TEST_CASE("cmd_run fails cleanly on a missing scenario file") {
  std::ostringstream out;
  std::ostringstream err;
  const int rc = cmd_run("/nonexistent/missing.scn", "", {}, out, err);
  CHECK(rc == 1);
  CHECK(err.str().find("cannot read scenario file") != std::string::npos);
}

TEST_CASE("cmd_run reports override problems by field") {
  TempDir dir("loam_test_cli_override");
  const std::string scn = write_scenario(dir, "[run]\nduration = 1\n");
  std::ostringstream out;
  std::ostringstream err;

  CHECK(cmd_run(scn, "", {"controller.alpha=abc"}, out, err) == 1);
  CHECK(err.str().find("controller.alpha") != std::string::npos);

  std::ostringstream err2;
  CHECK(cmd_run(scn, "", {"nonsense"}, out, err2) == 1);
  CHECK(err2.str().find("expected section.key=value") != std::string::npos);

  std::ostringstream out3;
  std::ostringstream err3;
  const int rc = cmd_run(scn, "", {"terrain.resolution=64", "run.duration=0.5"}, out3, err3);
  CHECK(rc == 0);  // valid overrides are applied
  CHECK(out3.str().find("frames: 30") != std::string::npos);
}

TEST_CASE("cmd_run rejects invalid resolved scenarios") {
  TempDir dir("loam_test_cli_invalid");
  const std::string scn = write_scenario(dir, "[run]\nduration = -1\n");
  std::ostringstream out;
  std::ostringstream err;
  CHECK(cmd_run(scn, "", {}, out, err) == 1);
  CHECK(err.str().find("run.duration") != std::string::npos);
}

TEST_CASE("cmd_run distinguishes a fall with exit code 2") {
  TempDir dir("loam_test_cli_fall");
  const std::string scn = write_scenario(dir,
                                         "[terrain]\nresolution = 128\n"
                                         "[character]\ninitial_tilt = 1.5\n"
                                         "[controller]\nalpha = 0\nbeta = 0\nangular_drag = 0\n"
                                         "[run]\nduration = 5\n");
  std::ostringstream out;
  std::ostringstream err;
  const int rc = cmd_run(scn, "", {}, out, err);
  CHECK(rc == 2);
  CHECK(out.str().find("end_reason: fall_over") != std::string::npos);
  CHECK(err.str().find("fell over at frame") != std::string::npos);
}

TEST_CASE("cmd_presets prints the four materials") {
  std::ostringstream out;
  CHECK(cmd_presets(out) == 0);
  const std::string text = out.str();
  CHECK(text.find("name") != std::string::npos);
  CHECK(text.find("sand") != std::string::npos);
  CHECK(text.find("soil") != std::string::npos);
  CHECK(text.find("mud") != std::string::npos);
  CHECK(text.find("snow") != std::string::npos);
  CHECK(text.find("0.004") != std::string::npos);
}

TEST_CASE("cmd_bench validates its grid and frame count") {
  std::ostringstream out;
  std::ostringstream err;
  CHECK(cmd_bench(200, 10, out, err) == 1);
  CHECK(err.str().find("bench.grid") != std::string::npos);

  std::ostringstream err2;
  CHECK(cmd_bench(128, 0, out, err2) == 1);
  CHECK(err2.str().find("bench.frames") != std::string::npos);

  std::ostringstream out3;
  std::ostringstream err3;
  CHECK(cmd_bench(128, 5, out3, err3) == 0);
  CHECK(err3.str().empty());
  CHECK(out3.str().find("grid: 128") != std::string::npos);
  CHECK(out3.str().find("median_ms:") != std::string::npos);
  CHECK(out3.str().find("p99_ms:") != std::string::npos);
}

}  // namespace
}  // namespace loam
