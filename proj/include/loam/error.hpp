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

#ifndef LOAM_ERROR_HPP_
#define LOAM_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace loam {

// Query outside the terrain's horizontal extent.
struct OutOfTerrain : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Vertical ray started below the sampled surface.
struct RayBelowSurface : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Body tilt reached +-pi/2; the run terminates with a diagnostic.
struct FallOver : std::runtime_error {
  explicit FallOver(double tilt_value, long long at_frame = -1)
      : std::runtime_error("body tilt reached fall-over threshold"),
        tilt(tilt_value),
        frame(at_frame) {}
  double tilt = 0.0;
  long long frame = -1;
};

// Scenario parsing or validation failure with field-level messages.
struct ValidationError : std::runtime_error {
  explicit ValidationError(std::vector<std::string> issue_list)
      : std::runtime_error(join(issue_list)), issues(std::move(issue_list)) {}
  std::vector<std::string> issues;

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) {
      if (!out.empty()) out += "; ";
      out += s;
    }
    return out;
  }
};

}  // namespace loam

#endif  // LOAM_ERROR_HPP_
