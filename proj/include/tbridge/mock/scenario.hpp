// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tbridge/common/vec.hpp"

namespace tbridge::mock {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Speed from `from` seconds after departure until the next change.
struct SpeedChange {
  double from = 0.0;
  double speed = 0.0;  // m/s
};

struct ScriptedVehicle {
  std::string id;
  std::string vtype;
  double depart = 0.0;
  std::vector<Vec2> route;            // >= 2 waypoints, followed in straight lines
  std::vector<SpeedChange> speeds;    // sorted by `from`, first one at 0
};

struct Phase {
  std::string state;
  double duration = 0.0;
};

struct ScriptedLight {
  std::string junction;
  std::vector<Phase> program;  // cycles forever from t = 0
};

struct Scenario {
  double step_length = 0.1;
  std::vector<ScriptedVehicle> vehicles;
  std::vector<ScriptedLight> lights;

  /// Throws ScenarioError on the first violated constraint.
  void validate() const;
};

/// Line-based text format, '#' starts a comment:
///
///   step_length 0.1
///   vehicle veh0 car depart 0.0 route 0,0 100,0 100,50 speed 10 5@4.5
///   light J1 GrGr:5 rGrG:5
///
/// `speed` takes `v` or `v@t` entries (t seconds after departure; a bare
/// value means @0).
Scenario parse_scenario(std::istream& in);
Scenario parse_scenario_text(std::string_view text);
Scenario load_scenario(const std::string& path);

}  // namespace tbridge::mock
