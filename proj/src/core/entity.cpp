// SPDX-License-Identifier: Apache-2.0
#include "tbridge/core/entity.hpp"

#include <algorithm>
#include <cmath>

namespace tbridge::core {

void apply_update(VehicleState& previous, VehicleState& target, const VehicleState& incoming, bool first_sighting) {
  if (first_sighting) {
    previous = incoming;
  } else {
    previous = std::move(target);
  }
  target = incoming;
}

void on_network_update(EntityTable& table, std::span<const VehicleState> batch) {
  for (const auto& state : batch) {
    auto [it, inserted] = table.try_emplace(state.id);
    InterpolatedEntity& e = it->second;
    apply_update(e.previous, e.target, state, inserted);
    e.alpha = 0.0;
  }
}

double advance_alpha(double alpha, double dt, double t_step) {
  double a = std::clamp(alpha + dt / t_step, 0.0, 1.0);
  return a >= 1.0 - kAlphaSnap ? 1.0 : a;
}

Vec2 plane_position(const InterpolatedEntity& e) { return lerp(e.previous.position, e.target.position, e.alpha); }

void snap_to_ground(InterpolatedEntity& e, const VisualParams& p) {
  if (p.terrain == nullptr) {
    e.engine_pos.z = 0.0;
    e.pitch = 0.0;
    e.ground_valid = true;
    return;
  }
  auto h = p.terrain->snap_height(e.engine_pos.x, e.engine_pos.y, p.probe_height);
  e.engine_pos.z = h.elevation;
  e.height_fallback = h.out_of_bounds;
  if (p.snap_pitch) {
    double wheelbase = p.wheelbase * p.mapper->units_per_meter;
    Vec2 center{e.engine_pos.x, e.engine_pos.y};
    e.pitch = p.terrain->snap_pitch(center, p.mapper->forward(e.engine_yaw), wheelbase, p.probe_height).pitch_degrees;
  }
  e.ground_valid = true;
}

void tick_visuals(EntityTable& table, double dt, double t_step, const VisualParams& p) {
  for (auto& [id, e] : table) {
    e.alpha = advance_alpha(e.alpha, dt, t_step);
    Vec2 plane = plane_position(e);
    Vec2 engine = p.mapper->to_engine(plane);
    e.engine_pos.x = engine.x;
    e.engine_pos.y = engine.y;
    e.engine_yaw =
        geo::lerp_angle(p.mapper->to_engine_yaw(e.previous.angle), p.mapper->to_engine_yaw(e.target.angle), e.alpha);
    bool wants_height = !p.slotted_only_height || e.slot.has_value();
    if (wants_height && (p.refresh_height || !e.ground_valid)) snap_to_ground(e, p);
  }
}

}  // namespace tbridge::core
