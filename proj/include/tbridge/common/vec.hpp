// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

namespace tbridge {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr bool operator==(Vec3, Vec3) = default;
};

inline double length(Vec2 v) { return std::hypot(v.x, v.y); }
inline double length(Vec3 v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }
inline double distance(Vec2 a, Vec2 b) { return length(a - b); }
inline double distance(Vec3 a, Vec3 b) { return length(a - b); }

// a + (b - a) * t; returns a exactly at t == 0 and b exactly at t == 1.
inline double lerp(double a, double b, double t) {
  if (t == 1.0) return b;
  return a + (b - a) * t;
}

inline Vec2 lerp(Vec2 a, Vec2 b, double t) { return {lerp(a.x, b.x, t), lerp(a.y, b.y, t)}; }

}  // namespace tbridge
