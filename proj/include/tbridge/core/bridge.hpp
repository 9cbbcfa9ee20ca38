// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "tbridge/common/vec.hpp"
#include "tbridge/core/config.hpp"
#include "tbridge/core/culling.hpp"
#include "tbridge/core/entity.hpp"
#include "tbridge/core/pool.hpp"
#include "tbridge/core/shared_state.hpp"
#include "tbridge/core/snapshot.hpp"
#include "tbridge/geo/heightfield.hpp"
#include "tbridge/geo/mapper.hpp"
#include "tbridge/net/light_plan.hpp"

namespace tbridge::core {

/// The consumer side: owns the entity table and the pool, and turns the
/// shared producer state into one SceneSnapshot per tick.
class Bridge {
 public:
  Bridge(BridgeConfig config, geo::CoordinateMapper mapper, geo::HeightField terrain, net::TrafficLightPlan plan,
         const SharedTrafficState& shared);

  /// One frame of dt seconds: pull new batches, drop arrived vehicles, advance
  /// interpolation, run the scheduled cull pass and build the snapshot.
  const SceneSnapshot& tick(double dt);

  /// A moved listener forces a distance pass on the next tick.
  void set_listener(Vec3 listener) {
    if (listener.x != listener_.x || listener.y != listener_.y || listener.z != listener_.z) listener_moved_ = true;
    listener_ = listener;
  }
  Vec3 listener() const { return listener_; }

  const SceneSnapshot& snapshot() const { return snapshot_; }
  const EntityTable& entities() const { return table_; }
  const VehiclePool& pool() const { return pool_; }
  const CullDecisions& last_cull() const { return last_cull_; }
  const net::TrafficLightPlan& plan() const { return plan_; }
  const BridgeConfig& config() const { return config_; }
  const geo::CoordinateMapper& mapper() const { return mapper_; }
  std::uint64_t tick_index() const { return tick_index_; }
  double tick_time() const { return tick_time_; }
  /// Set once the producer has died; the bridge keeps ticking on stale data.
  const std::optional<std::string>& terminal_error() const { return terminal_error_; }

  /// Releases every slot and forgets all vehicles.
  void clear();

 private:
  void sync();

  BridgeConfig config_;
  geo::CoordinateMapper mapper_;
  geo::HeightField terrain_;
  net::TrafficLightPlan plan_;
  const SharedTrafficState& shared_;

  EntityTable table_;
  VehiclePool pool_;
  std::map<std::string, std::string> light_strings_;
  Vec3 listener_;
  bool listener_moved_ = false;
  std::uint64_t seen_generation_ = 0;
  double sim_time_ = 0.0;
  double step_lag_ = 0.0;
  std::uint64_t tick_index_ = 0;
  double tick_time_ = 0.0;
  CullDecisions last_cull_;
  SceneSnapshot snapshot_;
  std::optional<std::string> terminal_error_;
};

}  // namespace tbridge::core
