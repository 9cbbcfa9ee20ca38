// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tbridge/common/vec.hpp"
#include "tbridge/core/entity.hpp"
#include "tbridge/geo/mapper.hpp"
#include "tbridge/net/light_plan.hpp"
#include "tbridge/net/signal.hpp"

namespace tbridge::core {

struct SnapshotVehicle {
  std::string id;
  Vec3 position;  // engine units
  double yaw = 0.0;    // degrees
  double pitch = 0.0;  // degrees
  std::string vtype;
  double speed = 0.0;         // m/s
  double acceleration = 0.0;  // m/s^2
  Vec3 velocity;              // engine units/s along yaw
};

struct SnapshotLight {
  std::string tl_id;
  int link_index = 0;
  net::SignalState state = net::SignalState::Unknown;
  Vec3 position;
  double yaw = 0.0;
};

struct SnapshotStats {
  std::size_t active = 0;       // vehicles holding a slot
  std::size_t pooled_free = 0;  // free slots over all types
  std::size_t culled = 0;       // known vehicles without a slot
  std::size_t known = 0;
  double sim_time = 0.0;
  double step_lag = 0.0;
  std::uint64_t generation = 0;
  std::uint64_t tick = 0;
};

struct SceneSnapshot {
  double tick_time = 0.0;  // consumer clock, s
  std::vector<SnapshotVehicle> vehicles;
  std::vector<SnapshotLight> lights;
  Vec3 listener;
  double culling_radius = 0.0;  // engine units
  double hysteresis = 0.0;      // engine units
  SnapshotStats stats;
};

/// The active (slotted) entities plus every planned light head with the state
/// taken from `light_strings` (junction id -> signal string). Heads of
/// junctions without a string yet are Unknown. Fills the entity counts of
/// `stats`; the caller supplies the rest.
SceneSnapshot build_snapshot(const EntityTable& table, const net::TrafficLightPlan& plan,
                             const std::map<std::string, std::string>& light_strings, Vec3 listener,
                             const geo::CoordinateMapper& mapper, SnapshotStats stats);

}  // namespace tbridge::core
