// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tbridge/common/traffic_source.hpp"
#include "tbridge/io/socket.hpp"
#include "tbridge/traci/constants.hpp"
#include "tbridge/traci/error.hpp"
#include "tbridge/traci/message.hpp"
#include "tbridge/traci/protocol.hpp"

namespace tbridge::traci {

struct RetryPolicy {
  int attempts = 3;
  std::chrono::milliseconds delay{100};
};

/// A connected TraCI client. Requests are strictly sequential: every call
/// sends one message and blocks for its reply. Movable, not shareable.
class TraciSession final : public TrafficSource {
 public:
  /// Connects and performs the version handshake. Throws ConnectionRefused once
  /// `policy.attempts` attempts (each followed by `policy.delay`) fail, and
  /// HandshakeMismatch if the server reports an unsupported API version.
  static TraciSession connect(const std::string& host, std::uint16_t port, RetryPolicy policy = {});

  TraciSession(TraciSession&&) noexcept = default;
  TraciSession& operator=(TraciSession&&) noexcept = default;
  ~TraciSession() override = default;

  /// Empty when the server does not implement the version command.
  const std::optional<VersionInfo>& version() const { return version_; }

  /// Advances the server to `target_time` (a target at or before the current
  /// time advances exactly one step) and reports the step's departures and
  /// arrivals.
  StepResult step(double target_time) override;

  VehicleState get_vehicle_state(std::string_view vehicle_id);
  std::string get_traffic_light_state(std::string_view junction_id);
  std::vector<std::string> traffic_light_ids();
  double step_length();
  double sim_time() const { return sim_time_; }

  /// Batched getters for the producer. Vehicles whose queries fail are logged
  /// and left out.
  std::vector<VehicleState> vehicle_states(std::span<const std::string> ids) override;
  std::vector<LightState> light_states(std::span<const std::string> junction_ids) override;

  /// Sends the close command (best effort) and drops the connection.
  void close() override;
  bool is_open() const { return stream_.is_open(); }

  struct Reply {
    StatusResponse status;
    std::optional<TraciCommand> response;
  };

  /// Sends `commands` in one message and pairs every command with its status
  /// and, for successful queries, its response command. As in SUMO, a simstep
  /// in the message executes after all other commands and is answered last;
  /// the result is still indexed like `commands`.
  std::vector<Reply> exchange(std::span<const TraciCommand> commands);

 private:
  explicit TraciSession(io::TcpStream stream) : stream_(std::move(stream)) {}

  static constexpr std::array<std::uint8_t, 5> kVehicleVars = {ids::VAR_POSITION, ids::VAR_ANGLE, ids::VAR_SPEED,
                                                               ids::VAR_ACCELERATION, ids::VAR_TYPE};

  static std::vector<TraciCommand> vehicle_queries(std::span<const std::string> ids);
  std::optional<VehicleState> decode_vehicle(const Reply* replies, const std::string& id, std::string& error) const;
  TraciValue query(std::uint8_t domain, std::uint8_t variable, std::string_view object_id, Errc on_error);

  io::TcpStream stream_;
  std::optional<VersionInfo> version_;
  double sim_time_ = 0.0;
};

}  // namespace tbridge::traci
