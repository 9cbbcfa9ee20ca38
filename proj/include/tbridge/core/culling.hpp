// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tbridge/common/vec.hpp"
#include "tbridge/core/config.hpp"
#include "tbridge/core/entity.hpp"
#include "tbridge/core/pool.hpp"

namespace tbridge::core {

struct CullDecisions {
  bool ran = false;  // distance pass executed this tick
  std::vector<std::string> spawned;
  std::vector<std::string> despawned;
  std::size_t updated = 0;  // active entities keeping their slot
};

/// Spawns entities that come within the culling radius, despawns those beyond
/// radius + hysteresis and keeps the rest. Distances use the horizontal engine
/// distance to the listener converted to meters. The pass only runs when
/// tick_index is a multiple of config.cull_check_period; otherwise the
/// previous decisions stand; `force` runs it regardless. Newly spawned entities are snapped to the ground
/// immediately.
CullDecisions cull_and_schedule(EntityTable& table, Vec3 listener, const BridgeConfig& config, VehiclePool& pool,
                                std::uint64_t tick_index, const VisualParams& visuals, bool force = false);

/// Drops the given vehicles from the table, returning the ids that held a
/// slot (their slots are released). Unknown ids are ignored.
std::vector<std::string> remove_vehicles(EntityTable& table, std::span<const std::string> ids, VehiclePool& pool);

}  // namespace tbridge::core
