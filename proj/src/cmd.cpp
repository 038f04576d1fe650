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

#include "loam/cmd.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>

#include "loam/engine.hpp"
#include "loam/error.hpp"
#include "loam/scenario.hpp"

namespace loam {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError({"cannot read scenario file '" + path + "'"});
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool trace_timing_requested() {
  const char* v = std::getenv("LOAM_TRACE_TIMING");
  return v != nullptr && std::strcmp(v, "1") == 0;
}

}  // namespace

int cmd_run(const std::string& scenario_path, const std::string& out_dir,
            const std::vector<std::string>& overrides, std::ostream& out, std::ostream& err) {
  Scenario scenario;
  try {
    RawScenario raw = collect_scenario_text(read_file(scenario_path));
    for (const std::string& assignment : overrides) {
      apply_override(raw, assignment);
    }
    scenario = resolve_scenario(raw);
    const std::vector<std::string> issues = validate_scenario(scenario);
    if (!issues.empty()) {
      for (const std::string& issue : issues) {
        err << "error: " << issue << "\n";
      }
      return 1;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  RunOptions options;
  options.out_dir = out_dir;
  options.deterministic_trace = !trace_timing_requested();

  RunResult result;
  try {
    result = run_scenario(scenario, options);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  out << "end_reason: " << end_reason_name(result.end) << "\n";
  out << "frames: " << result.frames << "\n";
  char buf[128];
  std::snprintf(buf, sizeof(buf), "max_abs_tilt_rad: %.9g\n", result.max_abs_tilt);
  out << buf;
  std::snprintf(buf, sizeof(buf), "total_carved_m3: %.9g\n", result.total_carved);
  out << buf;
  std::snprintf(buf, sizeof(buf), "total_deposited_m3: %.9g\n", result.total_deposited);
  out << buf;
  std::snprintf(buf, sizeof(buf), "median_step_ms: %.3f\n", result.median_step_ms);
  out << buf;
  std::snprintf(buf, sizeof(buf), "p99_step_ms: %.3f\n", result.p99_step_ms);
  out << buf;
  if (!out_dir.empty()) {
    out << "artifacts: " << out_dir << "\n";
  }
  if (result.end == EndReason::kFallOver) {
    err << "error: character fell over at frame " << result.fall_frame << "\n";
    return 2;
  }
  return 0;
}

int cmd_presets(std::ostream& out) {
  out << "name  depth_per_frame  rim_compression  smoothness\n";
  char buf[128];
  for (const TerrainMaterial& m : material_presets()) {
    std::snprintf(buf, sizeof(buf), "%-4s  %-15.9g  %-15.9g  %.9g\n", m.name.c_str(), m.depth,
                  m.compression, m.smoothness);
    out << buf;
  }
  out << "\n";
  out << "depth_per_frame: carve rate under a planted foot, m per frame at 60 Hz\n";
  out << "rim_compression: material pushed up around the print rim, m per frame\n";
  out << "smoothness: print blending strength in [0,1]; sand slumps, mud holds\n";
  return 0;
}

int cmd_bench(int grid, int frames, std::ostream& out, std::ostream& err) {
  if (grid != 128 && grid != 256 && grid != 512 && grid != 1024) {
    err << "error: bench.grid: expected one of 128|256|512|1024, got " << grid << "\n";
    return 1;
  }
  if (frames <= 0) {
    err << "error: bench.frames: expected a positive frame count, got " << frames << "\n";
    return 1;
  }
  const RunResult result = bench_run(grid, frames);
  out << "grid: " << grid << "\n";
  out << "frames: " << result.frames << "\n";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "median_ms: %.3f\n", result.median_step_ms);
  out << buf;
  std::snprintf(buf, sizeof(buf), "p99_ms: %.3f\n", result.p99_step_ms);
  out << buf;
  return 0;
}

}  // namespace loam
