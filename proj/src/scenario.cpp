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

#include "loam/scenario.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "loam/error.hpp"

namespace loam {

namespace {

// Every key the scenario format accepts, by section. Anything else is an
// error, never silently ignored.
const std::map<std::string, std::vector<std::string>>& known_keys() {
  static const std::map<std::string, std::vector<std::string>> keys = {
      {"terrain", {"size_x", "size_z", "resolution", "slope_deg", "noise_seed", "noise_amp"}},
      {"material", {"preset", "depth", "compression", "smoothness"}},
      {"vegetation", {"class", "density", "seed", "t_max", "gamma", "collapse"}},
      {"character",
       {"total_height", "mass", "inertia", "start_x", "start_z", "initial_tilt", "leg_upper",
        "leg_lower", "pelvis_height", "hip_spacing", "foot_half_length", "foot_half_width",
        "com_height_offset"}},
      {"controller", {"alpha", "beta", "min_beta", "angular_drag"}},
      {"gait", {"step_length", "cycle_duration", "swing_apex"}},
      {"run", {"duration", "dt"}},
  };
  return keys;
}

bool key_known(const std::string& section, const std::string& key) {
  const auto it = known_keys().find(section);
  if (it == known_keys().end()) {
    return false;
  }
  for (const auto& k : it->second) {
    if (k == key) {
      return true;
    }
  }
  return false;
}

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

double parse_num(const std::string& field, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const double d = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0' || !std::isfinite(d)) {
    throw ValidationError({field + ": expected a number, got '" + value + "'"});
  }
  return d;
}

int parse_int_field(const std::string& field, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE || v < -2147483647LL ||
      v > 2147483647LL) {
    throw ValidationError({field + ": expected an integer, got '" + value + "'"});
  }
  return static_cast<int>(v);
}

std::uint64_t parse_seed(const std::string& field, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  if (!value.empty() && value[0] == '-') {
    throw ValidationError({field + ": expected a non-negative integer, got '" + value + "'"});
  }
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE) {
    throw ValidationError({field + ": expected a non-negative integer, got '" + value + "'"});
  }
  return static_cast<std::uint64_t>(v);
}

std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

int Scenario::nz() const {
  return static_cast<int>(std::llround(size_z / cell_size()));
}

const std::vector<TerrainMaterial>& material_presets() {
  // Per-frame coefficients at 60 Hz. Orderings: sand carves shallower than
  // mud/snow and deposits nothing; soil carves less than sand but compresses
  // more; mud is the sharpest (least smoothing), snow in between.
  static const std::vector<TerrainMaterial> presets = {
      {"sand", 0.002, 0.0, 0.8},
      {"soil", 0.0012, 0.0015, 0.3},
      {"mud", 0.004, 0.003, 0.15},
      {"snow", 0.004, 0.002, 0.45},
  };
  return presets;
}

RawScenario collect_scenario_text(const std::string& text) {
  RawScenario raw;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') {
      continue;
    }
    if (t.front() == '[') {
      if (t.back() != ']') {
        throw ValidationError({"line " + std::to_string(line_no) + ": malformed section header '" +
                               t + "'"});
      }
      section = trim(t.substr(1, t.size() - 2));
      if (known_keys().find(section) == known_keys().end()) {
        throw ValidationError(
            {"line " + std::to_string(line_no) + ": unknown section '" + section + "'"});
      }
      raw.sections[section];  // a section may legitimately stay empty
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(
          {"line " + std::to_string(line_no) + ": expected 'key = value', got '" + t + "'"});
    }
    if (section.empty()) {
      throw ValidationError(
          {"line " + std::to_string(line_no) + ": key outside any [section]"});
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (!key_known(section, key)) {
      throw ValidationError({"line " + std::to_string(line_no) + ": unknown key '" + section +
                             "." + key + "'"});
    }
    auto& sec = raw.sections[section];
    if (sec.find(key) != sec.end()) {
      throw ValidationError(
          {"line " + std::to_string(line_no) + ": duplicate key '" + section + "." + key + "'"});
    }
    sec[key] = value;
  }
  return raw;
}

void apply_override(RawScenario& raw, const std::string& dotted_assignment) {
  const std::size_t eq = dotted_assignment.find('=');
  if (eq == std::string::npos) {
    throw ValidationError({"override '" + dotted_assignment + "': expected section.key=value"});
  }
  const std::string path = trim(dotted_assignment.substr(0, eq));
  const std::string value = trim(dotted_assignment.substr(eq + 1));
  const std::size_t dot = path.find('.');
  if (dot == std::string::npos) {
    throw ValidationError({"override '" + path + "': expected section.key=value"});
  }
  const std::string section = path.substr(0, dot);
  const std::string key = path.substr(dot + 1);
  if (!key_known(section, key)) {
    throw ValidationError({"override: unknown key '" + section + "." + key + "'"});
  }
  raw.sections[section][key] = value;
}

Scenario resolve_scenario(const RawScenario& raw) {
  Scenario s;
  const auto get = [&raw](const char* section, const char* key) -> const std::string* {
    const auto sec = raw.sections.find(section);
    if (sec == raw.sections.end()) {
      return nullptr;
    }
    const auto kv = sec->second.find(key);
    return kv == sec->second.end() ? nullptr : &kv->second;
  };
  const auto num = [&get](const char* section, const char* key, double fallback) {
    const std::string* v = get(section, key);
    return v == nullptr ? fallback : parse_num(std::string(section) + "." + key, *v);
  };

  // Terrain first: later defaults (start_z) depend on it.
  s.size_x = num("terrain", "size_x", s.size_x);
  s.size_z = num("terrain", "size_z", s.size_z);
  if (const std::string* v = get("terrain", "resolution")) {
    s.resolution = parse_int_field("terrain.resolution", *v);
  }
  s.slope_deg = num("terrain", "slope_deg", s.slope_deg);
  if (const std::string* v = get("terrain", "noise_seed")) {
    s.noise_seed = parse_seed("terrain.noise_seed", *v);
  }
  s.noise_amp = num("terrain", "noise_amp", s.noise_amp);

  // Material: preset baseline, then explicit coefficient overrides.
  if (const std::string* v = get("material", "preset")) {
    bool found = false;
    for (const TerrainMaterial& preset : material_presets()) {
      if (preset.name == *v) {
        s.material = preset;
        found = true;
        break;
      }
    }
    if (!found) {
      throw ValidationError(
          {"material.preset: unknown preset '" + *v + "' (expected sand|soil|mud|snow)"});
    }
  }
  s.material.depth = num("material", "depth", s.material.depth);
  s.material.compression = num("material", "compression", s.material.compression);
  s.material.smoothness = num("material", "smoothness", s.material.smoothness);

  if (const std::string* v = get("vegetation", "class")) {
    if (*v != "none" && *v != "small" && *v != "medium") {
      throw ValidationError(
          {"vegetation.class: unknown class '" + *v + "' (expected none|small|medium)"});
    }
    s.vegetation_class = *v;
  }
  s.vegetation_density = num("vegetation", "density", s.vegetation_density);
  if (const std::string* v = get("vegetation", "seed")) {
    s.vegetation_seed = parse_seed("vegetation.seed", *v);
  }
  s.deform.t_max = num("vegetation", "t_max", s.deform.t_max);
  s.deform.gamma = num("vegetation", "gamma", s.deform.gamma);
  if (const std::string* v = get("vegetation", "collapse")) {
    if (*v != "fall" && *v != "instant") {
      throw ValidationError(
          {"vegetation.collapse: unknown mode '" + *v + "' (expected fall|instant)"});
    }
    s.collapse = *v;
  }

  // Character: total_height scales every morphology default and the gait
  // defaults; explicit keys then replace individual values.
  const double total_height = num("character", "total_height", 1.7);
  const double scale = total_height / 1.7;
  s.morphology.total_height = total_height;
  s.morphology.leg_upper = num("character", "leg_upper", 0.5 * scale);
  s.morphology.leg_lower = num("character", "leg_lower", 0.5 * scale);
  s.morphology.pelvis_height = num("character", "pelvis_height", 0.85 * scale);
  s.morphology.hip_spacing = num("character", "hip_spacing", 0.2 * scale);
  s.morphology.foot_half_length = num("character", "foot_half_length", 0.12 * scale);
  s.morphology.foot_half_width = num("character", "foot_half_width", 0.05 * scale);
  s.morphology.com_height_offset = num("character", "com_height_offset", 0.12 * scale);
  s.mass = num("character", "mass", s.mass);
  s.inertia = num("character", "inertia", s.inertia);
  s.start_x = num("character", "start_x", s.start_x);
  s.start_z = num("character", "start_z", s.size_z * 0.5);
  s.initial_tilt = num("character", "initial_tilt", s.initial_tilt);

  s.controller.alpha = num("controller", "alpha", s.controller.alpha);
  s.controller.beta = num("controller", "beta", s.controller.beta);
  s.min_beta = num("controller", "min_beta", s.min_beta);
  s.controller.angular_drag = num("controller", "angular_drag", s.controller.angular_drag);

  s.step_length = num("gait", "step_length", 0.5 * scale);
  s.cycle_duration = num("gait", "cycle_duration", 1.2 * scale);
  s.swing_apex = num("gait", "swing_apex", 0.05 * scale);

  s.duration = num("run", "duration", s.duration);
  s.dt = num("run", "dt", s.dt);
  return s;
}

Scenario parse_scenario(const std::string& text) {
  return resolve_scenario(collect_scenario_text(text));
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError({"cannot read scenario file '" + path + "'"});
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "[terrain]\n";
  out << "size_x = " << fmt_num(s.size_x) << "\n";
  out << "size_z = " << fmt_num(s.size_z) << "\n";
  out << "resolution = " << s.resolution << "\n";
  out << "slope_deg = " << fmt_num(s.slope_deg) << "\n";
  out << "noise_seed = " << s.noise_seed << "\n";
  out << "noise_amp = " << fmt_num(s.noise_amp) << "\n";
  out << "\n[material]\n";
  out << "preset = " << s.material.name << "\n";
  out << "depth = " << fmt_num(s.material.depth) << "\n";
  out << "compression = " << fmt_num(s.material.compression) << "\n";
  out << "smoothness = " << fmt_num(s.material.smoothness) << "\n";
  out << "\n[vegetation]\n";
  out << "class = " << s.vegetation_class << "\n";
  out << "density = " << fmt_num(s.vegetation_density) << "\n";
  out << "seed = " << s.vegetation_seed << "\n";
  out << "t_max = " << fmt_num(s.deform.t_max) << "\n";
  out << "gamma = " << fmt_num(s.deform.gamma) << "\n";
  out << "collapse = " << s.collapse << "\n";
  out << "\n[character]\n";
  out << "total_height = " << fmt_num(s.morphology.total_height) << "\n";
  out << "mass = " << fmt_num(s.mass) << "\n";
  out << "inertia = " << fmt_num(s.inertia) << "\n";
  out << "start_x = " << fmt_num(s.start_x) << "\n";
  out << "start_z = " << fmt_num(s.start_z) << "\n";
  out << "initial_tilt = " << fmt_num(s.initial_tilt) << "\n";
  out << "leg_upper = " << fmt_num(s.morphology.leg_upper) << "\n";
  out << "leg_lower = " << fmt_num(s.morphology.leg_lower) << "\n";
  out << "pelvis_height = " << fmt_num(s.morphology.pelvis_height) << "\n";
  out << "hip_spacing = " << fmt_num(s.morphology.hip_spacing) << "\n";
  out << "foot_half_length = " << fmt_num(s.morphology.foot_half_length) << "\n";
  out << "foot_half_width = " << fmt_num(s.morphology.foot_half_width) << "\n";
  out << "com_height_offset = " << fmt_num(s.morphology.com_height_offset) << "\n";
  out << "\n[controller]\n";
  out << "alpha = " << fmt_num(s.controller.alpha) << "\n";
  out << "beta = " << fmt_num(s.controller.beta) << "\n";
  out << "min_beta = " << fmt_num(s.min_beta) << "\n";
  out << "angular_drag = " << fmt_num(s.controller.angular_drag) << "\n";
  out << "\n[gait]\n";
  out << "step_length = " << fmt_num(s.step_length) << "\n";
  out << "cycle_duration = " << fmt_num(s.cycle_duration) << "\n";
  out << "swing_apex = " << fmt_num(s.swing_apex) << "\n";
  out << "\n[run]\n";
  out << "duration = " << fmt_num(s.duration) << "\n";
  out << "dt = " << fmt_num(s.dt) << "\n";
  return out.str();
}

std::vector<std::string> validate_scenario(const Scenario& s) {
  std::vector<std::string> issues;
  const auto require = [&issues](bool ok, const std::string& message) {
    if (!ok) {
      issues.push_back(message);
    }
  };

  require(s.size_x > 0.0, "terrain.size_x: must be > 0");
  require(s.size_z > 0.0, "terrain.size_z: must be > 0");
  require(s.resolution >= 2, "terrain.resolution: must be >= 2");
  if (s.size_x > 0.0 && s.size_z > 0.0 && s.resolution >= 2) {
    require(s.nz() >= 2, "terrain.size_z: fewer than 2 cells at this resolution");
    const double rise = std::fabs(std::tan(s.slope_deg * kPi / 180.0)) * s.size_x;
    require(rise + std::fabs(s.noise_amp) <= 100.0,
            "terrain.slope_deg: generated heights exceed the +-100 m bound");
  }

  require(s.material.depth >= 0.0, "material.depth: must be >= 0");
  require(s.material.compression >= 0.0, "material.compression: must be >= 0");
  require(s.material.smoothness >= 0.0 && s.material.smoothness <= 1.0,
          "material.smoothness: must lie in [0, 1]");

  require(s.vegetation_density >= 0.0, "vegetation.density: must be >= 0");
  require(s.deform.t_max > 0.0, "vegetation.t_max: must be > 0");
  require(s.deform.gamma > 0.0, "vegetation.gamma: must be > 0");

  const Morphology& m = s.morphology;
  require(m.total_height >= 1.0 && m.total_height <= 1.9,
          "character.total_height: supported range is [1, 1.9] m");
  require(s.mass > 0.0, "character.mass: must be > 0");
  require(s.inertia > 0.0, "character.inertia: must be > 0");
  require(m.leg_upper > 0.0, "character.leg_upper: must be > 0");
  require(m.leg_lower > 0.0, "character.leg_lower: must be > 0");
  require(m.pelvis_height > 0.0, "character.pelvis_height: must be > 0");
  require(m.hip_spacing > 0.0, "character.hip_spacing: must be > 0");
  require(m.foot_half_length > 0.0, "character.foot_half_length: must be > 0");
  require(m.foot_half_width > 0.0, "character.foot_half_width: must be > 0");
  require(m.com_height_offset > 0.0, "character.com_height_offset: must be > 0");
  require(m.leg_upper + m.leg_lower < m.pelvis_height + 0.2,
          "character.leg_upper: legs must satisfy leg_upper + leg_lower < pelvis_height + 0.2");
  require(std::fabs(s.initial_tilt) < kPi / 2.0,
          "character.initial_tilt: must lie strictly inside (-pi/2, pi/2)");
  if (s.size_x > 0.0 && s.size_z > 0.0) {
    require(s.start_x - m.foot_half_length > 0.0 && s.start_x < s.size_x,
            "character.start_x: feet must start inside the terrain");
    const double lane = m.hip_spacing * 0.5 + m.foot_half_width;
    require(s.start_z - lane > 0.0 && s.start_z + lane < s.size_z,
            "character.start_z: both foot lanes must fit inside the terrain");
  }

  require(s.controller.alpha >= 0.0, "controller.alpha: must be >= 0");
  require(s.controller.angular_drag >= 0.0, "controller.angular_drag: must be >= 0");

  require(s.step_length > 0.0, "gait.step_length: must be > 0");
  require(s.cycle_duration > 0.0, "gait.cycle_duration: must be > 0");
  require(s.swing_apex >= 0.0, "gait.swing_apex: must be >= 0");

  require(s.duration > 0.0, "run.duration: must be > 0");
  require(s.dt > 0.0, "run.dt: must be > 0");
  return issues;
}

}  // namespace loam
