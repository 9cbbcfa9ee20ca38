// SPDX-License-Identifier: Apache-2.0
#include "tbridge/core/snapshot.hpp"

namespace tbridge::core {

SceneSnapshot build_snapshot(const EntityTable& table, const net::TrafficLightPlan& plan,
                             const std::map<std::string, std::string>& light_strings, Vec3 listener,
                             const geo::CoordinateMapper& mapper, SnapshotStats stats) {
  SceneSnapshot snap;
  snap.listener = listener;

  stats.active = 0;
  stats.culled = 0;
  stats.known = table.size();
  for (const auto& [id, e] : table) {
    if (!e.slot) {
      ++stats.culled;
      continue;
    }
    ++stats.active;
    const double a = e.alpha;
    SnapshotVehicle v;
    v.id = id;
    v.position = e.engine_pos;
    v.yaw = e.engine_yaw;
    v.pitch = e.pitch;
    v.vtype = e.target.vtype;
    v.speed = lerp(e.previous.speed, e.target.speed, a);
    v.acceleration = lerp(e.previous.acceleration, e.target.acceleration, a);
    const Vec2 dir = mapper.forward(e.engine_yaw) * (v.speed * mapper.units_per_meter);
    v.velocity = {dir.x, dir.y, 0.0};
    snap.vehicles.push_back(std::move(v));
  }

  snap.lights.reserve(plan.spawns.size());
  for (const auto& spawn : plan.spawns) {
    snap.lights.push_back({spawn.tl_id, spawn.link_index, net::SignalState::Unknown, spawn.position, spawn.yaw});
  }
  for (const auto& [tl_id, state] : light_strings) {
    for (const auto& [handle, signal] : net::apply_signal_string(plan, tl_id, state)) {
      snap.lights[handle.value].state = signal;
    }
  }

  snap.stats = stats;
  return snap;
}

}  // namespace tbridge::core
