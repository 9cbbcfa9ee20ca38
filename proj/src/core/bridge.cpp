// SPDX-License-Identifier: Apache-2.0
#include "tbridge/core/bridge.hpp"

#include <spdlog/spdlog.h>

#include <set>
#include <stdexcept>

namespace tbridge::core {

Bridge::Bridge(BridgeConfig config, geo::CoordinateMapper mapper, geo::HeightField terrain, net::TrafficLightPlan plan,
               const SharedTrafficState& shared)
    : config_(std::move(config)),
      mapper_(mapper),
      terrain_(std::move(terrain)),
      plan_(std::move(plan)),
      shared_(shared),
      pool_(config_.pool_sizes, config_.default_pool_size, config_.pool_growth) {
  config_.validate();
  mapper_.validate();
}

void Bridge::sync() {
  SharedView view = shared_.read_since(seen_generation_);
  if (view.terminal_error && !terminal_error_) {
    terminal_error_ = view.terminal_error;
    spdlog::error("producer terminated: {}", *terminal_error_);
  }
  if (view.generation == seen_generation_) return;

  if (view.full_resync) {
    std::set<std::string> live;
    for (const auto& [id, pair] : view.changed) live.insert(id);
    std::vector<std::string> stale;
    for (const auto& [id, e] : table_) {
      if (!live.contains(id)) stale.push_back(id);
    }
    remove_vehicles(table_, stale, pool_);
  } else {
    remove_vehicles(table_, view.removed, pool_);
  }

  for (auto& [id, pair] : view.changed) {
    auto& e = table_[id];
    e.previous = std::move(pair.previous);
    e.target = std::move(pair.target);
    e.alpha = 0.0;
  }
  if (view.lights_changed) light_strings_ = std::move(view.lights);
  seen_generation_ = view.generation;
  sim_time_ = view.sim_time;
  step_lag_ = view.step_lag;
}

const SceneSnapshot& Bridge::tick(double dt) {
  if (!(dt >= 0.0)) throw std::invalid_argument("tick dt must be >= 0");
  sync();

  VisualParams params;
  params.mapper = &mapper_;
  params.terrain = &terrain_;
  params.refresh_height = tick_index_ % static_cast<std::uint64_t>(config_.height_check_period) == 0;
  params.snap_pitch = config_.snap_pitch;
  params.wheelbase = config_.wheelbase;
  params.probe_height = config_.probe_height;

  tick_visuals(table_, dt, config_.step_length(), params);
  last_cull_ = cull_and_schedule(table_, listener_, config_, pool_, tick_index_, params, listener_moved_);
  listener_moved_ = false;
  tick_time_ += dt;

  SnapshotStats stats;
  stats.pooled_free = pool_.total_free();
  stats.sim_time = sim_time_;
  stats.step_lag = step_lag_;
  stats.generation = seen_generation_;
  stats.tick = tick_index_;
  snapshot_ = build_snapshot(table_, plan_, light_strings_, listener_, mapper_, stats);
  snapshot_.tick_time = tick_time_;
  snapshot_.culling_radius = config_.culling_radius * mapper_.units_per_meter;
  snapshot_.hysteresis = config_.hysteresis * mapper_.units_per_meter;

  ++tick_index_;
  return snapshot_;
}

void Bridge::clear() {
  std::vector<std::string> ids;
  ids.reserve(table_.size());
  for (const auto& [id, e] : table_) ids.push_back(id);
  remove_vehicles(table_, ids, pool_);
}

}  // namespace tbridge::core
