// SPDX-License-Identifier: Apache-2.0
#include "tbridge/mock/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tbridge::mock {

namespace {
constexpr double kEps = 1e-9;
}

double distance_at(const ScriptedVehicle& v, double tau) {
  if (tau <= 0.0) return 0.0;
  double d = 0.0;
  for (std::size_t i = 0; i < v.speeds.size(); ++i) {
    const double begin = v.speeds[i].from;
    if (begin >= tau) break;
    const double end = i + 1 < v.speeds.size() ? std::min(v.speeds[i + 1].from, tau) : tau;
    d += v.speeds[i].speed * (end - begin);
  }
  return d;
}

double speed_at(const ScriptedVehicle& v, double tau) {
  double s = v.speeds.front().speed;
  for (const auto& c : v.speeds) {
    if (c.from <= tau + kEps) s = c.speed;
  }
  return s;
}

double route_length(const ScriptedVehicle& v) {
  double total = 0.0;
  for (std::size_t i = 1; i < v.route.size(); ++i) total += distance(v.route[i - 1], v.route[i]);
  return total;
}

namespace {
// index of the segment under `d` and the distance already covered before it
std::pair<std::size_t, double> segment_of(const ScriptedVehicle& v, double d) {
  double covered = 0.0;
  for (std::size_t i = 1; i < v.route.size(); ++i) {
    const double len = distance(v.route[i - 1], v.route[i]);
    if (d < covered + len || i + 1 == v.route.size()) return {i - 1, covered};
    covered += len;
  }
  return {0, 0.0};
}
}  // namespace

Vec2 position_along(const ScriptedVehicle& v, double d) {
  if (d <= 0.0) return v.route.front();
  auto [seg, covered] = segment_of(v, d);
  const Vec2 a = v.route[seg];
  const Vec2 b = v.route[seg + 1];
  const double len = distance(a, b);
  const double t = std::min(1.0, (d - covered) / len);
  return lerp(a, b, t);
}

double heading_along(const ScriptedVehicle& v, double d) {
  auto [seg, covered] = segment_of(v, std::max(0.0, d));
  const Vec2 delta = v.route[seg + 1] - v.route[seg];
  double deg = std::atan2(delta.x, delta.y) * 180.0 / std::numbers::pi;
  if (deg < 0.0) deg += 360.0;
  return deg;
}

const std::string& light_state_at(const ScriptedLight& light, double t) {
  double cycle = 0.0;
  for (const auto& p : light.program) cycle += p.duration;
  double u = std::fmod(std::max(0.0, t) + kEps, cycle);
  for (const auto& p : light.program) {
    if (u < p.duration) return p.state;
    u -= p.duration;
  }
  return light.program.back().state;
}

MockSimulation::MockSimulation(Scenario scenario) : scenario_(std::move(scenario)) {
  scenario_.validate();
  tracks_.resize(scenario_.vehicles.size());
  for (std::size_t i = 0; i < scenario_.vehicles.size(); ++i) {
    by_id_.emplace(scenario_.vehicles[i].id, i);
    tracks_[i].length = route_length(scenario_.vehicles[i]);
  }
}

StepResult MockSimulation::advance() {
  ++steps_;
  const double t = time();
  StepResult r;
  r.sim_time = t;
  for (std::size_t i = 0; i < tracks_.size(); ++i) {
    auto& track = tracks_[i];
    const auto& v = scenario_.vehicles[i];
    if (track.status == Status::Pending && v.depart <= t + kEps) {
      track.status = Status::Active;
      track.inserted = t;
      r.departed_ids.push_back(v.id);
    }
    if (track.status == Status::Active && distance_at(v, t - track.inserted) >= track.length - kEps) {
      track.status = Status::Arrived;
      r.arrived_ids.push_back(v.id);
    }
  }
  return r;
}

StepResult MockSimulation::step_to(double target) {
  StepResult total = advance();
  while (time() + kEps < target) {
    StepResult r = advance();
    total.sim_time = r.sim_time;
    total.departed_ids.insert(total.departed_ids.end(), r.departed_ids.begin(), r.departed_ids.end());
    total.arrived_ids.insert(total.arrived_ids.end(), r.arrived_ids.begin(), r.arrived_ids.end());
  }
  return total;
}

std::vector<std::string> MockSimulation::active_ids() const {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < tracks_.size(); ++i) {
    if (tracks_[i].status == Status::Active) ids.push_back(scenario_.vehicles[i].id);
  }
  return ids;
}

std::optional<VehicleState> MockSimulation::vehicle(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end() || tracks_[it->second].status != Status::Active) return std::nullopt;
  const auto& v = scenario_.vehicles[it->second];
  const auto& track = tracks_[it->second];
  const double t = time();
  const double tau = t - track.inserted;
  const double d = distance_at(v, tau);
  const double dt = scenario_.step_length;

  VehicleState s;
  s.id = v.id;
  s.vtype = v.vtype;
  s.position = position_along(v, d);
  s.angle = heading_along(v, d);
  s.speed = speed_at(v, tau);
  s.acceleration = (s.speed - speed_at(v, std::max(0.0, tau - dt))) / dt;
  s.sim_time = t;
  return s;
}

std::vector<std::string> MockSimulation::light_ids() const {
  std::vector<std::string> ids;
  for (const auto& l : scenario_.lights) ids.push_back(l.junction);
  return ids;
}

std::optional<std::string> MockSimulation::light_state(std::string_view junction) const {
  for (const auto& l : scenario_.lights) {
    if (l.junction == junction) return light_state_at(l, time());
  }
  return std::nullopt;
}

}  // namespace tbridge::mock
