// SPDX-License-Identifier: Apache-2.0
#include "tbridge/geo/mapper.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tbridge::geo {

namespace {
constexpr double kDeg = 180.0 / std::numbers::pi;
}

double normalize_degrees(double degrees) {
  double r = std::fmod(degrees, 360.0);
  if (r < 0.0) r += 360.0;
  // fmod of a tiny negative number can round up to exactly 360
  return r >= 360.0 ? 0.0 : r;
}

double angle_difference(double from, double to) {
  double d = normalize_degrees(to - from);
  return d > 180.0 ? d - 360.0 : d;
}

double lerp_angle(double from, double to, double t) {
  if (t == 1.0) return normalize_degrees(to);
  return normalize_degrees(from + angle_difference(from, to) * t);
}

void CoordinateMapper::validate() const {
  if (!(units_per_meter > 0.0) || !std::isfinite(units_per_meter)) {
    throw std::invalid_argument("units_per_meter must be positive");
  }
}

double CoordinateMapper::to_engine_yaw(double sumo_angle) const {
  double yaw = sumo_angle - yaw_offset;
  return normalize_degrees(flip_yaw_sign ? -yaw : yaw);
}

double CoordinateMapper::heading_of(Vec2 d) const {
  double y = flip_yaw_sign ? -d.y : d.y;
  return normalize_degrees(std::atan2(y, d.x) * kDeg);
}

Vec2 CoordinateMapper::forward(double engine_yaw) const {
  double r = engine_yaw / kDeg;
  double s = std::sin(r);
  return {std::cos(r), flip_yaw_sign ? -s : s};
}

}  // namespace tbridge::geo
