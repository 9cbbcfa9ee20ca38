// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "tbridge/common/vec.hpp"

namespace tbridge {

/// One vehicle's kinematic sample at a simulation timestep, in simulation-plane
/// units. `angle` keeps the TraCI convention (degrees clockwise from north);
/// conversion to engine yaw happens only in geo::CoordinateMapper.
struct VehicleState {
  std::string id;
  Vec2 position;
  double angle = 0.0;
  double speed = 0.0;
  double acceleration = 0.0;
  std::string vtype;
  double sim_time = 0.0;

  friend bool operator==(const VehicleState&, const VehicleState&) = default;
};

}  // namespace tbridge
