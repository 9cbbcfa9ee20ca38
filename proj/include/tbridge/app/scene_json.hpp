// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

#include "tbridge/common/vec.hpp"
#include "tbridge/core/snapshot.hpp"

// Wire format of the /scene WebSocket endpoint. Field names and units are
// listed in README.md; keep the two in step.
namespace tbridge::app {

inline constexpr int kSceneSchemaVersion = 1;

struct ListenerUpdate {
  Vec3 position;      // engine units
  double yaw = 0.0;   // degrees, engine convention
  std::uint64_t client = 0;
};

/// {"type":"snapshot", ...}; `listener_yaw` rides along with the listener position.
nlohmann::json snapshot_json(const core::SceneSnapshot& snapshot, double listener_yaw = 0.0);
std::string snapshot_text(const core::SceneSnapshot& snapshot, double listener_yaw = 0.0);

/// {"type":"listener","x":..,"y":..,"z":..,"yaw":..}; z and yaw default to 0.
/// Empty on anything else (with the reason in `error`).
std::optional<ListenerUpdate> parse_listener(std::string_view text, std::string* error = nullptr);
std::string listener_text(const ListenerUpdate& update);

}  // namespace tbridge::app
