// SPDX-License-Identifier: Apache-2.0
#include "tbridge/osc/gate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tbridge::osc {

void OscConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string("osc.") + name + " must be > 0");
  };
  positive(send_interval, "send_interval");
  positive(delta_pos, "delta_pos");
  positive(delta_vel, "delta_vel");
  positive(keep_alive, "keep_alive");
  positive(units_per_meter, "units_per_meter");
  if (port == 0) throw std::invalid_argument("osc.port must be > 0");
  if (datagram_limit < 64) throw std::invalid_argument("osc.datagram_limit must be >= 64");
}

const char* to_string(SendReason reason) {
  switch (reason) {
    case SendReason::None: return "none";
    case SendReason::FirstTransmission: return "first";
    case SendReason::PositionChanged: return "position";
    case SendReason::VelocityChanged: return "velocity";
    case SendReason::KeepAlive: return "keep_alive";
  }
  return "?";
}

GateDecision should_send(const OscVehicleRecord& record, Vec3 position, double velocity, double now, const OscConfig& config) {
  if (!record.last_sent) return {true, SendReason::FirstTransmission};
  const LastSent& last = *record.last_sent;
  if (distance(position, last.position) / config.units_per_meter > config.delta_pos) return {true, SendReason::PositionChanged};
  if (std::abs(velocity - last.velocity) > config.delta_vel) return {true, SendReason::VelocityChanged};
  if (now - last.time >= config.keep_alive) return {true, SendReason::KeepAlive};
  return {};
}

void mark_sent(OscVehicleRecord& record, Vec3 position, double velocity, double now) {
  const double t = record.last_sent ? std::max(record.last_sent->time, now) : now;
  record.last_sent = LastSent{position, velocity, t};
}

}  // namespace tbridge::osc
