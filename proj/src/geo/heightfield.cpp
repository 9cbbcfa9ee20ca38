// SPDX-License-Identifier: Apache-2.0
#include "tbridge/geo/heightfield.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

namespace tbridge::geo {

HeightField HeightField::flat(double elevation) {
  HeightField f;
  f.min_ = f.max_ = elevation;
  f.fallback = elevation;
  return f;
}

HeightField HeightField::grid(Vec2 origin, double cell, int rows, int cols, std::vector<double> elevations) {
  if (!(cell > 0.0) || !std::isfinite(cell)) throw std::invalid_argument("heightfield cell size must be positive");
  if (rows < 2 || cols < 2) throw std::invalid_argument("heightfield needs at least 2x2 samples");
  if (elevations.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw std::invalid_argument("heightfield expects " + std::to_string(rows * cols) + " samples, got " +
                                std::to_string(elevations.size()));
  }
  if (!std::all_of(elevations.begin(), elevations.end(), [](double e) { return std::isfinite(e); })) {
    throw std::invalid_argument("heightfield contains non-finite elevations");
  }
  HeightField f;
  f.origin_ = origin;
  f.cell_ = cell;
  f.rows_ = rows;
  f.cols_ = cols;
  auto [lo, hi] = std::minmax_element(elevations.begin(), elevations.end());
  f.min_ = *lo;
  f.max_ = *hi;
  f.fallback = *lo;
  f.elevations_ = std::move(elevations);
  return f;
}

HeightField HeightField::parse(std::istream& in) {
  std::stringstream clean;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    clean << line << '\n';
  }
  double ox = 0, oy = 0, cell = 0;
  int rows = 0, cols = 0;
  if (!(clean >> ox >> oy >> cell >> rows >> cols)) throw std::runtime_error("heightfield: bad header");
  if (rows < 2 || cols < 2 || static_cast<long long>(rows) * cols > 100'000'000LL) {
    throw std::runtime_error("heightfield: implausible grid size " + std::to_string(rows) + "x" + std::to_string(cols));
  }
  std::vector<double> elev;
  elev.reserve(static_cast<std::size_t>(rows) * cols);
  double v = 0;
  while (elev.size() < elev.capacity() && clean >> v) elev.push_back(v);
  if (elev.size() != elev.capacity()) {
    throw std::runtime_error("heightfield: expected " + std::to_string(elev.capacity()) + " samples, read " +
                             std::to_string(elev.size()));
  }
  try {
    return grid({ox, oy}, cell, rows, cols, std::move(elev));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("heightfield: ") + e.what());
  }
}

HeightField HeightField::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("heightfield: cannot open " + path.string());
  try {
    return parse(in);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

bool HeightField::contains(double x, double y) const {
  if (is_flat()) return std::isfinite(x) && std::isfinite(y);
  double max_x = origin_.x + cell_ * (cols_ - 1);
  double max_y = origin_.y + cell_ * (rows_ - 1);
  return x >= origin_.x && x <= max_x && y >= origin_.y && y <= max_y;
}

HeightSample HeightField::snap_height(double x, double y, double probe_height) const {
  if (!contains(x, y)) return {fallback, true};
  double h;
  if (is_flat()) {
    h = min_;
  } else {
    double fx = (x - origin_.x) / cell_;
    double fy = (y - origin_.y) / cell_;
    int c = std::min(static_cast<int>(std::floor(fx)), cols_ - 2);
    int r = std::min(static_cast<int>(std::floor(fy)), rows_ - 2);
    double tx = fx - c;
    double ty = fy - r;
    double bottom = lerp(node(r, c), node(r, c + 1), tx);
    double top = lerp(node(r + 1, c), node(r + 1, c + 1), tx);
    h = lerp(bottom, top, ty);
  }
  if (h > probe_height) return {fallback, true};
  return {h, false};
}

PitchSample HeightField::snap_pitch(Vec2 center, Vec2 forward, double wheelbase, double probe_height) const {
  if (!(wheelbase > 0.0)) throw std::invalid_argument("wheelbase must be positive");
  Vec2 half = forward * (wheelbase / 2.0);
  Vec2 front = center + half;
  Vec2 rear = center - half;
  auto hf = snap_height(front.x, front.y, probe_height);
  auto hr = snap_height(rear.x, rear.y, probe_height);
  if (hf.out_of_bounds || hr.out_of_bounds) return {0.0, true};
  return {std::atan2(hf.elevation - hr.elevation, wheelbase) * 180.0 / std::numbers::pi, false};
}

HeightSample snap_height(const HeightField& field, double x, double y, double probe_height) {
  return field.snap_height(x, y, probe_height);
}

PitchSample snap_pitch(const HeightField& field, Vec2 center, double yaw, double wheelbase, double probe_height) {
  double r = yaw * std::numbers::pi / 180.0;
  return field.snap_pitch(center, {std::cos(r), std::sin(r)}, wheelbase, probe_height);
}

}  // namespace tbridge::geo
