// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <condition_variable>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "tbridge/app/config.hpp"
#include "tbridge/app/scene_server.hpp"
#include "tbridge/common/traffic_source.hpp"
#include "tbridge/core/bridge.hpp"
#include "tbridge/core/producer.hpp"
#include "tbridge/core/shared_state.hpp"
#include "tbridge/geo/heightfield.hpp"
#include "tbridge/net/light_plan.hpp"
#include "tbridge/osc/streamer.hpp"

namespace tbridge::app {

/// Everything loaded from disk before anything connects.
struct Startup {
  net::TrafficLightPlan plan;
  geo::HeightField terrain;
  std::vector<std::string> junctions;  // traffic-light ids the producer polls
  std::size_t lanes = 0;
  std::size_t connections = 0;
};

/// Checks the files, parses the network and plans the light heads. Throws
/// ConfigError (naming the missing path) or net::NetError.
Startup prepare(const AppConfig& config);

/// The in-process mock when `mock_scenario` is set, otherwise a TraCI session.
std::unique_ptr<TrafficSource> open_source(const AppConfig& config);

/// The consumer role: ticks the bridge, applies the newest listener update
/// before the tick and feeds the OSC streamer from the resulting snapshot.
class Consumer {
 public:
  Consumer(const AppConfig& config, Startup startup, const core::SharedTrafficState& shared, ListenerCell& listener,
           osc::OscSender* osc_sender);

  const core::SceneSnapshot& tick(double dt);
  /// Final remove messages, then every slot back to the pool.
  void shutdown();

  core::Bridge& bridge() { return bridge_; }
  const core::Bridge& bridge() const { return bridge_; }
  const osc::OscStreamer* streamer() const { return streamer_ ? &*streamer_ : nullptr; }
  double listener_yaw() const { return listener_yaw_; }

 private:
  core::Bridge bridge_;
  ListenerCell& listener_;
  std::uint64_t listener_version_ = 0;
  double listener_yaw_ = 0.0;
  std::optional<osc::OscStreamer> streamer_;
};

/// Hands snapshots from the tick loop to the scene server at the broadcast
/// rate. Holds at most one pending snapshot (newer replaces older) and
/// serializes on its own thread, so the tick loop never waits on clients.
class Broadcaster {
 public:
  Broadcaster(SceneServer& server, double rate);
  ~Broadcaster();

  /// Called every tick; copies the snapshot only when one is due and a client is connected.
  void offer(const core::SceneSnapshot& snapshot, double listener_yaw, double now);
  void stop();

  std::uint64_t queued() const;
  std::uint64_t superseded() const;

 private:
  void run(std::stop_token token);

  SceneServer& server_;
  double period_;
  double next_due_ = 0.0;
  mutable std::mutex mu_;
  std::condition_variable_any cv_;
  std::optional<std::pair<core::SceneSnapshot, double>> pending_;
  std::uint64_t queued_ = 0;
  std::uint64_t superseded_ = 0;
  std::jthread thread_;
};

struct RunSummary {
  int exit_code = 0;
  std::uint64_t ticks = 0;
  double wall_seconds = 0.0;
  double sim_time = 0.0;
  core::ProducerStats producer;
  osc::StreamerStats osc;
  SceneServerStats scene;
  std::optional<std::string> error;

  double ticks_per_second() const { return wall_seconds > 0 ? static_cast<double>(ticks) / wall_seconds : 0.0; }
};

inline constexpr int kExitProducerDied = 3;

/// Producer, consumer and broadcaster wired together.
class Runtime {
 public:
  /// Starts the scene server (when enabled) right away so clients can connect
  /// before run().
  Runtime(AppConfig config, Startup startup, std::unique_ptr<TrafficSource> source);
  ~Runtime();

  SceneServer* scene_server() { return server_.get(); }
  ListenerCell& listener() { return listener_; }
  const AppConfig& config() const { return config_; }

  /// Blocks until `stop_requested` returns true, config.duration has passed or
  /// the producer dies. Stats lines (JSON) go to `stats_out` when given.
  RunSummary run(const std::function<bool()>& stop_requested, std::ostream* stats_out = nullptr);

  /// Snapshot of the consumer's last tick, for tests; empty before run().
  std::optional<core::SceneSnapshot> last_snapshot() const;

 private:
  AppConfig config_;
  Startup startup_;
  std::unique_ptr<TrafficSource> source_;
  ListenerCell listener_;
  std::unique_ptr<SceneServer> server_;
  mutable std::mutex last_mu_;
  std::optional<core::SceneSnapshot> last_;
};

}  // namespace tbridge::app
