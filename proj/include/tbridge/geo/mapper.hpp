// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tbridge/common/vec.hpp"

namespace tbridge::geo {

/// Wraps any angle into [0, 360).
double normalize_degrees(double degrees);

/// Interpolates from `from` to `to` along the shorter arc; result in [0, 360).
double lerp_angle(double from, double to, double t);

/// Signed smallest difference `to - from` in (-180, 180].
double angle_difference(double from, double to);

/// Simulation plane -> engine space. The single place where the TraCI heading
/// convention (degrees clockwise from north) is converted.
///
/// Engine convention: yaw 0 points along +x and yaw increases toward +y, so a
/// heading is `atan2(y, x)` of an engine-space displacement. With the Y axis
/// inverted this gives `yaw = sumo_angle - yaw_offset`. `flip_yaw_sign` is for
/// engines whose yaw increases toward -y: it negates the result and the
/// direction convention together, so `heading_of` and `forward` stay consistent.
struct CoordinateMapper {
  double offset_x = 0.0;
  double offset_y = 0.0;
  double units_per_meter = 1.0;
  double yaw_offset = 90.0;
  bool flip_yaw_sign = false;

  /// Throws std::invalid_argument unless units_per_meter > 0 and finite.
  void validate() const;

  Vec2 to_engine(Vec2 raw) const {
    return {(raw.x - offset_x) * units_per_meter, -(raw.y - offset_y) * units_per_meter};
  }

  Vec2 from_engine(Vec2 engine) const {
    return {engine.x / units_per_meter + offset_x, -engine.y / units_per_meter + offset_y};
  }

  double to_engine_yaw(double sumo_angle) const;

  /// Engine yaw of an engine-space displacement.
  double heading_of(Vec2 engine_delta) const;

  /// Unit vector in engine space pointing along `engine_yaw`.
  Vec2 forward(double engine_yaw) const;

  double meters(double engine_units) const { return engine_units / units_per_meter; }
};

}  // namespace tbridge::geo
