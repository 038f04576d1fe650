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

#ifndef LOAM_SCENARIO_HPP_
#define LOAM_SCENARIO_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "loam/balance.hpp"
#include "loam/gait.hpp"
#include "loam/heightfield.hpp"
#include "loam/vegetation.hpp"

namespace loam {

// Fully resolved run description. Every field holds a concrete value after
// parsing: derived defaults (morphology and gait scaling, start_z centering,
// material presets) are applied by resolve_scenario, so serialization and
// re-parsing round-trip exactly.
struct Scenario {
  // [terrain]
  double size_x = 10.0;
  double size_z = 10.0;
  int resolution = 512;  // cells along x; cells are square
  double slope_deg = 0.0;
  std::uint64_t noise_seed = 1;
  double noise_amp = 0.0;

  // [material]
  TerrainMaterial material{"soil", 0.0012, 0.0015, 0.3};

  // [vegetation]
  std::string vegetation_class = "none";  // none | small | medium
  double vegetation_density = 0.0;        // blades per square meter
  std::uint64_t vegetation_seed = 7;
  DeformParams deform{};
  std::string collapse = "fall";  // fall | instant

  // [character]
  double mass = 70.0;
  double inertia = 10.0;
  double start_x = 1.0;
  double start_z = 5.0;
  double initial_tilt = 0.0;
  Morphology morphology{};

  // [controller]
  ControllerParams controller{};
  double min_beta = 4.0;  // beta in maximum vegetation

  // [gait]
  double step_length = 0.5;
  double cycle_duration = 1.2;
  double swing_apex = 0.05;

  // [run]
  double duration = 10.0;
  double dt = 1.0 / 60.0;

  double cell_size() const { return size_x / resolution; }
  int nx() const { return resolution; }
  int nz() const;
  double class_height() const {
    return vegetation_class == "medium" ? 0.9 : (vegetation_class == "small" ? 0.5 : 0.0);
  }
};

// Raw key-value content of a scenario file: sections of string values, before
// derived defaults are resolved. Collection rejects unknown sections or keys,
// duplicate keys, and malformed lines.
struct RawScenario {
  std::map<std::string, std::map<std::string, std::string>> sections;
};

// The four built-in ground materials (per frame at 60 Hz).
const std::vector<TerrainMaterial>& material_presets();

// Parses the sectioned key=value text format. Throws ValidationError.
RawScenario collect_scenario_text(const std::string& text);

// Applies one "section.key=value" override; overrides beat file values.
// Throws ValidationError for unknown paths or malformed input.
void apply_override(RawScenario& raw, const std::string& dotted_assignment);

// Resolves raw values plus derived defaults into a concrete Scenario, in a
// fixed order so dependent defaults (morphology scale, gait scale, start_z)
// see their inputs. Throws ValidationError for malformed values.
Scenario resolve_scenario(const RawScenario& raw);

// collect + resolve.
Scenario parse_scenario(const std::string& text);

// Reads and parses a scenario file. Throws ValidationError (including for
// unreadable files).
Scenario load_scenario_file(const std::string& path);

// Canonical serialization: fixed section and key order, %.17g numbers.
// parse_scenario(serialize_scenario(s)) reproduces s exactly.
std::string serialize_scenario(const Scenario& s);

// Range and consistency checks; returns "section.key: message" issues,
// empty when the scenario is valid.
std::vector<std::string> validate_scenario(const Scenario& s);

}  // namespace loam

#endif  // LOAM_SCENARIO_HPP_
