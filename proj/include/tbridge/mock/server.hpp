// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "tbridge/common/traffic_source.hpp"
#include "tbridge/io/socket.hpp"
#include "tbridge/mock/scenario.hpp"
#include "tbridge/mock/simulation.hpp"

namespace tbridge::mock {

inline constexpr const char* kMockServerName = "tbridge mock";

/// Protocol state for one client: parses request messages and produces the
/// reply bytes. No I/O, so it can be driven directly in tests.
class MockSession {
 public:
  explicit MockSession(Scenario scenario) : sim_(std::move(scenario)) {}

  struct Reply {
    std::vector<std::uint8_t> bytes;
    bool close = false;  // the client sent CMD_CLOSE
  };

  /// `message` is one complete TraCI message including its length prefix.
  /// Malformed input produces an Err status, never an exception.
  Reply handle(std::span<const std::uint8_t> message);

  const MockSimulation& simulation() const { return sim_; }

 private:
  MockSimulation sim_;
  StepResult last_step_;
};

struct MockServerOptions {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;  // 0 = ephemeral
  /// Drop the connection without replying once this many messages arrived.
  std::optional<std::size_t> close_after_messages;
};

/// TCP front end for MockSession on its own thread. Serves one client at a
/// time; each connection starts from a fresh copy of the scenario.
class MockServer {
 public:
  MockServer(Scenario scenario, MockServerOptions options = {});
  ~MockServer();

  MockServer(const MockServer&) = delete;
  MockServer& operator=(const MockServer&) = delete;

  void start();
  void stop();
  std::uint16_t port() const { return listener_.port(); }

  std::size_t clients_served() const { return clients_.load(); }
  std::size_t messages_handled() const { return messages_.load(); }

 private:
  void serve(std::stop_token token);
  void serve_client(io::TcpStream& client, const std::stop_token& token);

  Scenario scenario_;
  MockServerOptions options_;
  io::TcpListener listener_;
  std::atomic<std::size_t> clients_{0};
  std::atomic<std::size_t> messages_{0};
  std::jthread thread_;
};

/// In-process TrafficSource backed by a MockSimulation, for tests and the
/// replay-free demo path that need no socket.
class MockSource final : public TrafficSource {
 public:
  explicit MockSource(Scenario scenario) : sim_(std::move(scenario)) {}

  StepResult step(double target_time) override { return sim_.step_to(target_time); }
  std::vector<VehicleState> vehicle_states(std::span<const std::string> ids) override;
  std::vector<LightState> light_states(std::span<const std::string> junction_ids) override;

  const MockSimulation& simulation() const { return sim_; }

 private:
  MockSimulation sim_;
};

}  // namespace tbridge::mock
