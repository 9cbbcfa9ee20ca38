// SPDX-License-Identifier: Apache-2.0
#include "tbridge/core/culling.hpp"

#include <cmath>

namespace tbridge::core {

CullDecisions cull_and_schedule(EntityTable& table, Vec3 listener, const BridgeConfig& config, VehiclePool& pool,
                                std::uint64_t tick_index, const VisualParams& visuals, bool force) {
  CullDecisions out;
  if (!force && tick_index % static_cast<std::uint64_t>(config.cull_check_period) != 0) {
    for (const auto& [id, e] : table) out.updated += e.slot.has_value() ? 1 : 0;
    return out;
  }
  out.ran = true;
  const double despawn_radius = config.culling_radius + config.hysteresis;
  for (auto& [id, e] : table) {
    double d = visuals.mapper->meters(std::hypot(e.engine_pos.x - listener.x, e.engine_pos.y - listener.y));
    e.distance_m = d;
    e.seen_by_cull = true;
    if (e.slot) {
      if (d > despawn_radius) {
        pool.release(*e.slot);
        e.slot.reset();
        e.ground_valid = false;
        out.despawned.push_back(id);
      } else {
        ++out.updated;
      }
    } else if (d <= config.culling_radius) {
      e.slot = pool.acquire(e.target.vtype);
      snap_to_ground(e, visuals);
      out.spawned.push_back(id);
    }
  }
  return out;
}

std::vector<std::string> remove_vehicles(EntityTable& table, std::span<const std::string> ids, VehiclePool& pool) {
  std::vector<std::string> released;
  for (const auto& id : ids) {
    auto it = table.find(id);
    if (it == table.end()) continue;
    if (it->second.slot) {
      pool.release(*it->second.slot);
      released.push_back(id);
    }
    table.erase(it);
  }
  return released;
}

}  // namespace tbridge::core
