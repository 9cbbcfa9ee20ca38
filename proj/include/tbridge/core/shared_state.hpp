// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tbridge/common/traffic_source.hpp"
#include "tbridge/common/vehicle_state.hpp"

namespace tbridge::core {

/// Everything the producer learned in one step.
struct PublishBatch {
  StepResult step;
  std::vector<VehicleState> vehicles;
  std::vector<LightState> lights;
  double step_lag = 0.0;  // s the producer finished behind schedule
};

/// Previous/target pair as maintained by the producer.
struct VehiclePair {
  VehicleState previous;
  VehicleState target;
  std::uint64_t updated_generation = 0;
};

/// What a consumer sees when it catches up from a given generation.
struct SharedView {
  std::uint64_t generation = 0;
  double sim_time = 0.0;
  double step_lag = 0.0;
  /// The consumer was too far behind for incremental removal tracking:
  /// `changed` holds every live vehicle and anything else must be dropped.
  bool full_resync = false;
  std::vector<std::pair<std::string, VehiclePair>> changed;
  std::vector<std::string> removed;
  std::map<std::string, std::string> lights;
  bool lights_changed = false;
  std::optional<std::string> terminal_error;
};

/// The map between the producer and the consumer. Each publish() is applied
/// under one lock, so readers see either none or all of a batch, and the
/// generation counter grows by exactly one per publish.
class SharedTrafficState {
 public:
  explicit SharedTrafficState(std::size_t removal_history = 4096) : removal_history_(removal_history) {}

  /// Applies the previous <- target, target <- new rule to every reported
  /// vehicle, drops arrived vehicles and replaces signal strings.
  void publish(const PublishBatch& batch);

  /// Changes after `since_generation`.
  SharedView read_since(std::uint64_t since_generation) const;

  std::uint64_t generation() const;
  double sim_time() const;
  std::size_t vehicle_count() const;

  void set_terminal_error(std::string message);
  std::optional<std::string> terminal_error() const;

 private:
  mutable std::mutex mu_;
  std::unordered_map<std::string, VehiclePair> vehicles_;
  std::map<std::string, std::string> lights_;
  std::uint64_t lights_generation_ = 0;
  std::deque<std::pair<std::uint64_t, std::string>> removals_;  // (generation, id)
  std::size_t removal_history_;
  std::uint64_t trimmed_through_ = 0;  // newest generation whose removals were dropped
  std::uint64_t generation_ = 0;
  double sim_time_ = 0.0;
  double step_lag_ = 0.0;
  std::optional<std::string> terminal_error_;
};

}  // namespace tbridge::core
