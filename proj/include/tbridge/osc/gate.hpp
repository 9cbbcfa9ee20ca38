// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "tbridge/common/vec.hpp"

namespace tbridge::osc {

struct OscConfig {
  double send_interval = 0.05;  // s
  double delta_pos = 0.5;       // m
  double delta_vel = 0.5;       // m/s
  double keep_alive = 2.0;      // s
  std::string host = "127.0.0.1";
  std::uint16_t port = 9000;
  std::size_t datagram_limit = 1472;  // bytes
  bool velocity_as_vector = false;    // send vx, vy, vz instead of the scalar speed
  double units_per_meter = 1.0;       // engine units per meter, for delta_pos

  /// Throws std::invalid_argument naming the first bad field.
  void validate() const;
};

struct LastSent {
  Vec3 position;  // engine units
  double velocity = 0.0;  // m/s
  double time = 0.0;      // s
};

/// What was last transmitted for one vehicle; empty until the first send.
struct OscVehicleRecord {
  std::optional<LastSent> last_sent;
  bool ever_sent() const { return last_sent.has_value(); }
};

enum class SendReason { None, FirstTransmission, PositionChanged, VelocityChanged, KeepAlive };

const char* to_string(SendReason reason);

struct GateDecision {
  bool send = false;
  SendReason reason = SendReason::None;
};

/// A vehicle is sent when it was never sent, when it moved more than
/// delta_pos or its speed changed by more than delta_vel since the last send,
/// or when keep_alive seconds have passed since then. Checked in that order;
/// the first condition that holds is the reason.
GateDecision should_send(const OscVehicleRecord& record, Vec3 position, double velocity, double now, const OscConfig& config);

/// Records the transmission. Time never moves backwards.
void mark_sent(OscVehicleRecord& record, Vec3 position, double velocity, double now);

}  // namespace tbridge::osc
