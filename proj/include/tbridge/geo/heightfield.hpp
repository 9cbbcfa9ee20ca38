// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <istream>
#include <vector>

#include "tbridge/common/vec.hpp"

namespace tbridge::geo {

struct HeightSample {
  double elevation = 0.0;
  bool out_of_bounds = false;
};

struct PitchSample {
  double pitch_degrees = 0.0;
  bool out_of_bounds = false;
};

/// Terrain the vehicles are snapped onto, in engine coordinates. Either a flat
/// plane or a regular grid of elevation samples interpolated bilinearly. This
/// stands in for the engine's top-down raycast against the city mesh.
///
/// Grid node (row r, col c) sits at (origin.x + c*cell, origin.y + r*cell);
/// elevations are stored row-major.
class HeightField {
 public:
  HeightField() = default;

  static HeightField flat(double elevation);

  /// Throws std::invalid_argument on cell <= 0, fewer than 2 rows or columns,
  /// a size mismatch or non-finite elevations.
  static HeightField grid(Vec2 origin, double cell, int rows, int cols, std::vector<double> elevations);

  /// Text format: `origin_x origin_y cell_size rows cols` followed by
  /// rows*cols elevations, row-major, whitespace separated; `#` starts a
  /// comment. Throws std::runtime_error with the offending path/position.
  static HeightField parse(std::istream& in);
  static HeightField load(const std::filesystem::path& path);

  bool is_flat() const { return rows_ == 0; }
  bool contains(double x, double y) const;
  double min_elevation() const { return min_; }
  double max_elevation() const { return max_; }

  /// Elevation returned (flagged) for queries outside the grid or below the probe.
  double fallback = 0.0;

  /// The surface hit by a vertical ray cast down from `probe_height` at (x, y).
  /// Outside the grid, or when the surface lies above the probe, returns
  /// `fallback` with out_of_bounds set.
  HeightSample snap_height(double x, double y, double probe_height) const;

  /// Pitch from two probes at center +/- wheelbase/2 along `forward` (unit
  /// vector): atan2(h_front - h_rear, wheelbase) in degrees, nose-up positive.
  /// Either probe missing gives pitch 0 with the flag set. Throws
  /// std::invalid_argument unless wheelbase > 0.
  PitchSample snap_pitch(Vec2 center, Vec2 forward, double wheelbase, double probe_height) const;

 private:
  double node(int row, int col) const { return elevations_[static_cast<std::size_t>(row) * cols_ + col]; }

  Vec2 origin_;
  double cell_ = 1.0;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> elevations_;
  double min_ = 0.0;
  double max_ = 0.0;
};

inline constexpr double kDefaultProbeHeight = 10000.0;

HeightSample snap_height(const HeightField& field, double x, double y, double probe_height = kDefaultProbeHeight);

/// `yaw` is a math-convention angle (degrees from +x toward +y).
PitchSample snap_pitch(const HeightField& field, Vec2 center, double yaw, double wheelbase,
                       double probe_height = kDefaultProbeHeight);

}  // namespace tbridge::geo
