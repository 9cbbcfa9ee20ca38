// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tbridge/common/vehicle_state.hpp"

namespace tbridge {

struct StepResult {
  double sim_time = 0.0;
  std::vector<std::string> departed_ids;
  std::vector<std::string> arrived_ids;

  friend bool operator==(const StepResult&, const StepResult&) = default;
};

using LightState = std::pair<std::string, std::string>;  // junction id, signal string

/// Whatever the producer polls each step: a live TraCI session or a recorded
/// capture. Owned by a single thread at a time.
class TrafficSource {
 public:
  virtual ~TrafficSource() = default;

  virtual StepResult step(double target_time) = 0;

  /// States for the given ids. Vehicles the source cannot report are left out
  /// of the result rather than failing the whole batch.
  virtual std::vector<VehicleState> vehicle_states(std::span<const std::string> ids) = 0;

  /// Unknown junctions are left out of the result.
  virtual std::vector<LightState> light_states(std::span<const std::string> junction_ids) = 0;
  /// Releases the connection or file behind the source. Called once the
  /// producer has stopped.
  virtual void close() {}
};

}  // namespace tbridge
