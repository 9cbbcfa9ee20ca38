// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "tbridge/common/vec.hpp"
#include "tbridge/common/vehicle_state.hpp"
#include "tbridge/core/pool.hpp"
#include "tbridge/geo/heightfield.hpp"
#include "tbridge/geo/mapper.hpp"

namespace tbridge::core {

/// Consumer-side view of one vehicle: the two simulation samples it blends
/// between, the blend factor and the derived engine transform.
struct InterpolatedEntity {
  VehicleState previous;
  VehicleState target;
  double alpha = 0.0;  // always within [0, 1]
  std::optional<SlotHandle> slot;

  Vec3 engine_pos;
  double engine_yaw = 0.0;
  double pitch = 0.0;
  bool ground_valid = false;  // engine_pos.z / pitch hold a height probe result
  bool height_fallback = false;

  bool seen_by_cull = false;  // false until the first distance check
  double distance_m = 0.0;    // horizontal distance at the last distance check
};

using EntityTable = std::map<std::string, InterpolatedEntity>;

/// Previous <- old target, target <- new state, alpha <- 0 for every state in
/// the batch. A vehicle seen for the first time starts with previous = target.
/// Vehicles missing from the batch are untouched.
void on_network_update(EntityTable& table, std::span<const VehicleState> batch);

/// Same rule for a single pair, used by the shared producer map.
void apply_update(VehicleState& previous, VehicleState& target, const VehicleState& incoming, bool first_sighting);

/// alpha + dt / t_step clamped to [0, 1]. Within 1e-9 of 1 counts as 1 so a
/// run of frames whose durations add up to t_step lands exactly on the target.
double advance_alpha(double alpha, double dt, double t_step);

inline constexpr double kAlphaSnap = 1e-9;

/// Interpolated simulation-plane position.
Vec2 plane_position(const InterpolatedEntity& e);

struct VisualParams {
  const geo::CoordinateMapper* mapper = nullptr;
  const geo::HeightField* terrain = nullptr;
  bool refresh_height = true;  // run the height probe this tick (always runs for entities without one)
  bool snap_pitch = false;
  double wheelbase = 2.7;
  double probe_height = geo::kDefaultProbeHeight;
  bool slotted_only_height = true;  // probe only entities holding a pool slot
};

/// Advances every entity's alpha by dt and recomputes its engine transform:
/// position = to_engine(lerp(previous, target, alpha)), yaw = shortest-arc
/// blend of the two mapped headings, z from the terrain probe.
void tick_visuals(EntityTable& table, double dt, double t_step, const VisualParams& params);

/// Runs the height (and optional pitch) probe for one entity now.
void snap_to_ground(InterpolatedEntity& e, const VisualParams& params);

}  // namespace tbridge::core
