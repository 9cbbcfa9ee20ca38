// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tbridge/common/traffic_source.hpp"
#include "tbridge/common/vehicle_state.hpp"
#include "tbridge/mock/scenario.hpp"

namespace tbridge::mock {

/// Closed-form kinematics of one scripted vehicle, `tau` seconds after it
/// was inserted. Shared by the simulation and usable as a test oracle.
double distance_at(const ScriptedVehicle& v, double tau);
double speed_at(const ScriptedVehicle& v, double tau);
double route_length(const ScriptedVehicle& v);
Vec2 position_along(const ScriptedVehicle& v, double distance);
/// Degrees clockwise from north of the route segment under `distance`.
double heading_along(const ScriptedVehicle& v, double distance);
/// Signal string of a program at absolute time t.
const std::string& light_state_at(const ScriptedLight& light, double t);

/// Deterministic fixed-step world. Time only moves in advance()/step_to().
///
/// A vehicle is inserted on the first step whose time reaches its depart
/// time and starts moving from its first waypoint at that step's time. It
/// arrives on the step where its travelled distance reaches the route length.
class MockSimulation {
 public:
  explicit MockSimulation(Scenario scenario);

  double time() const { return static_cast<double>(steps_) * scenario_.step_length; }
  std::uint64_t steps() const { return steps_; }
  double step_length() const { return scenario_.step_length; }
  const Scenario& scenario() const { return scenario_; }

  /// One step.
  StepResult advance();
  /// Steps until time() >= target (at least one step). Departed and arrived
  /// ids are accumulated over all steps taken.
  StepResult step_to(double target);

  std::vector<std::string> active_ids() const;
  std::optional<VehicleState> vehicle(std::string_view id) const;
  std::vector<std::string> light_ids() const;
  std::optional<std::string> light_state(std::string_view junction) const;

 private:
  enum class Status { Pending, Active, Arrived };
  struct Track {
    Status status = Status::Pending;
    double inserted = 0.0;  // time of the insertion step
    double length = 0.0;
  };

  Scenario scenario_;
  std::vector<Track> tracks_;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::uint64_t steps_ = 0;
};

}  // namespace tbridge::mock
