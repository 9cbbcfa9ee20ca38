// SPDX-License-Identifier: Apache-2.0
#include "tbridge/core/shared_state.hpp"

#include "tbridge/core/entity.hpp"

namespace tbridge::core {

void SharedTrafficState::publish(const PublishBatch& batch) {
  std::lock_guard lock(mu_);
  const std::uint64_t gen = ++generation_;
  for (const auto& state : batch.vehicles) {
    auto [it, inserted] = vehicles_.try_emplace(state.id);
    apply_update(it->second.previous, it->second.target, state, inserted);
    it->second.updated_generation = gen;
  }
  for (const auto& id : batch.step.arrived_ids) {
    // a vehicle may depart and arrive within one step; it never becomes visible
    if (vehicles_.erase(id) != 0) removals_.emplace_back(gen, id);
  }
  while (removals_.size() > removal_history_) {
    trimmed_through_ = removals_.front().first;
    removals_.pop_front();
  }

  bool lights_changed = false;
  for (const auto& [junction, state] : batch.lights) {
    auto& slot = lights_[junction];
    if (slot != state) {
      slot = state;
      lights_changed = true;
    }
  }
  if (lights_changed) lights_generation_ = gen;
  sim_time_ = batch.step.sim_time;
  step_lag_ = batch.step_lag;
}

SharedView SharedTrafficState::read_since(std::uint64_t since) const {
  std::lock_guard lock(mu_);
  SharedView view;
  view.generation = generation_;
  view.sim_time = sim_time_;
  view.step_lag = step_lag_;
  view.terminal_error = terminal_error_;
  if (since >= generation_) return view;

  // removals older than the retained history may have been trimmed
  view.full_resync = since < trimmed_through_;
  view.changed.reserve(vehicles_.size());
  for (const auto& [id, pair] : vehicles_) {
    if (view.full_resync || pair.updated_generation > since) view.changed.emplace_back(id, pair);
  }
  if (!view.full_resync) {
    for (auto it = removals_.rbegin(); it != removals_.rend() && it->first > since; ++it) view.removed.push_back(it->second);
  }
  if (lights_generation_ > since) {
    view.lights = lights_;
    view.lights_changed = true;
  }
  return view;
}

std::uint64_t SharedTrafficState::generation() const {
  std::lock_guard lock(mu_);
  return generation_;
}

double SharedTrafficState::sim_time() const {
  std::lock_guard lock(mu_);
  return sim_time_;
}

std::size_t SharedTrafficState::vehicle_count() const {
  std::lock_guard lock(mu_);
  return vehicles_.size();
}

void SharedTrafficState::set_terminal_error(std::string message) {
  std::lock_guard lock(mu_);
  terminal_error_ = std::move(message);
}

std::optional<std::string> SharedTrafficState::terminal_error() const {
  std::lock_guard lock(mu_);
  return terminal_error_;
}

}  // namespace tbridge::core
