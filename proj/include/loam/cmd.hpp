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

#ifndef LOAM_CMD_HPP_
#define LOAM_CMD_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace loam {

// Runs a scenario file and writes its artifacts to `out_dir`. `overrides`
// holds `section.key=value` assignments applied before validation. Honors
// LOAM_TRACE_TIMING=1 by annotating each trace row with its wall-clock step
// time (making the trace non-deterministic). Returns 0 when the run finishes
// (including by reaching the terrain edge), 1 on validation or I/O problems
// (details on `err`), and 2 when the character falls over.
int cmd_run(const std::string& scenario_path, const std::string& out_dir,
            const std::vector<std::string>& overrides, std::ostream& out, std::ostream& err);

// Prints the built-in terrain material presets. Returns 0.
int cmd_presets(std::ostream& out);

// Times a synthetic walking scenario on a `grid`x`grid` height field for
// `frames` steps and prints median_ms / p99_ms. Returns 0, or 1 for an
// unsupported grid size or frame count (details on `err`).
int cmd_bench(int grid, int frames, std::ostream& out, std::ostream& err);

}  // namespace loam

#endif  // LOAM_CMD_HPP_
