// SPDX-License-Identifier: Apache-2.0
#include "tbridge/app/cli.hpp"

#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <nlohmann/json.hpp>
#include <optional>
#include <thread>

#include "tbridge/app/capture.hpp"
#include "tbridge/app/config.hpp"
#include "tbridge/app/runtime.hpp"
#include "tbridge/mock/server.hpp"
#include "tbridge/net/light_plan.hpp"
#include "tbridge/net/network.hpp"
#include "tbridge/traci/error.hpp"

namespace tbridge::app {

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitStartup = 1;

struct Overrides {
  std::string config;
  std::optional<std::string> traci_host;
  std::optional<int> traci_port;
  std::optional<std::string> net_file;
  std::optional<std::string> heightfield;
  std::optional<std::string> mock_scenario;
  std::optional<double> rate;
  std::optional<double> radius;
  std::optional<double> hysteresis;
  std::optional<std::string> osc_host;
  std::optional<int> osc_port;
  bool no_osc = false;
  std::optional<std::string> scene_host;
  std::optional<int> scene_port;
  bool no_scene = false;
  std::optional<double> tick_rate;
  std::optional<double> broadcast_rate;
  std::optional<double> duration;
  std::optional<double> stats_interval;
  std::string log_level = "info";
  bool print_config = false;
};

void add_run_options(CLI::App& cmd, Overrides& o) {
  cmd.add_option("-c,--config", o.config, "JSON config file (flags override it)");
  cmd.add_option("--traci-host", o.traci_host, "TraCI server host");
  cmd.add_option("--traci-port", o.traci_port, "TraCI server port")->check(CLI::Range(1, 65535));
  cmd.add_option("--net", o.net_file, "SUMO .net.xml file");
  cmd.add_option("--heightfield", o.heightfield, "terrain grid file (default: flat ground)");
  cmd.add_option("--mock-scenario", o.mock_scenario, "drive the bridge from an in-process mock scenario");
  cmd.add_option("--rate", o.rate, "simulation request rate N in Hz (step length 1/N)");
  cmd.add_option("--radius", o.radius, "culling radius in meters");
  cmd.add_option("--hysteresis", o.hysteresis, "despawn band beyond the radius in meters");
  cmd.add_option("--osc-host", o.osc_host, "OSC destination host");
  cmd.add_option("--osc-port", o.osc_port, "OSC destination port")->check(CLI::Range(1, 65535));
  cmd.add_flag("--no-osc", o.no_osc, "disable the OSC stream");
  cmd.add_option("--scene-host", o.scene_host, "WebSocket bind address");
  cmd.add_option("--scene-port", o.scene_port, "WebSocket port (0 = ephemeral)")->check(CLI::Range(0, 65535));
  cmd.add_flag("--no-scene", o.no_scene, "disable the WebSocket endpoint");
  cmd.add_option("--tick-rate", o.tick_rate, "consumer ticks per second");
  cmd.add_option("--broadcast-rate", o.broadcast_rate, "snapshots per second to viewers");
  cmd.add_option("--duration", o.duration, "stop after this many seconds (0 = until interrupted)");
  cmd.add_option("--stats-interval", o.stats_interval, "seconds between stats lines (0 = off)");
  cmd.add_option("--log-level", o.log_level, "trace, debug, info, warn, error, off");
  cmd.add_flag("--print-config", o.print_config, "print the effective config as JSON and exit");
}

AppConfig effective_config(const Overrides& o) {
  AppConfig c = o.config.empty() ? AppConfig{} : load_config(o.config);
  if (o.traci_host) c.traci.host = *o.traci_host;
  if (o.traci_port) c.traci.port = static_cast<std::uint16_t>(*o.traci_port);
  if (o.net_file) c.net_file = *o.net_file;
  if (o.heightfield) c.heightfield = *o.heightfield;
  if (o.mock_scenario) c.mock_scenario = *o.mock_scenario;
  if (o.rate) c.bridge.rate_n = *o.rate;
  if (o.radius) c.bridge.culling_radius = *o.radius;
  if (o.hysteresis) c.bridge.hysteresis = *o.hysteresis;
  if (o.osc_host) c.osc.host = *o.osc_host;
  if (o.osc_port) c.osc.port = static_cast<std::uint16_t>(*o.osc_port);
  if (o.no_osc) c.osc_enabled = false;
  if (o.scene_host) c.scene.host = *o.scene_host;
  if (o.scene_port) c.scene.port = static_cast<std::uint16_t>(*o.scene_port);
  if (o.no_scene) c.scene.enabled = false;
  if (o.tick_rate) c.tick_rate = *o.tick_rate;
  if (o.broadcast_rate) c.scene.broadcast_rate = *o.broadcast_rate;
  if (o.duration) c.duration = *o.duration;
  if (o.stats_interval) c.stats_interval = *o.stats_interval;
  c.validate();
  return c;
}

int run_runtime(const AppConfig& config, std::unique_ptr<TrafficSource> source, Startup startup, std::ostream& out,
                const std::function<bool()>& interrupted, bool replay) {
  Runtime runtime(config, std::move(startup), std::move(source));
  auto summary = runtime.run(interrupted, &out);
  if (replay && summary.error && summary.error->find("replay finished") != std::string::npos) return 0;
  return summary.exit_code;
}

int check_net(const std::string& file, double height, std::ostream& out, std::ostream& err) {
  try {
    auto network = net::load_network(file);
    auto plan = net::plan_traffic_lights(network, height, geo::CoordinateMapper{});
    out << "lanes " << network.lanes.size() << '\n'
        << "connections " << network.connection_count << '\n'
        << "tl_connections " << network.tl_connections.size() << '\n'
        << "tl_junctions " << network.traffic_light_junction_count() << '\n'
        << "light_spawns " << plan.spawns.size() << '\n';
    return 0;
  } catch (const net::NetError& e) {
    err << "check-net: " << file << ": " << e.what() << '\n';
    return kExitStartup;
  }
}

}  // namespace

int bridge_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                const std::function<bool()>& interrupted) {
  CLI::App app{"Streams a running traffic simulation into an engine-space scene, OSC and a WebSocket feed"};
  app.name(args.empty() ? "bridge" : args.front());
  app.require_subcommand(1);

  Overrides run_opts;
  auto* run = app.add_subcommand("run", "connect to the simulation and stream until interrupted");
  add_run_options(*run, run_opts);

  std::string net_path;
  double height = net::kDefaultLightHeight;
  auto* check = app.add_subcommand("check-net", "parse a network and report lane, connection and light counts");
  check->add_option("file", net_path, "SUMO .net.xml file")->required();
  check->add_option("--height-offset", height, "light head height");

  Overrides cap_opts;
  std::string capture_out;
  auto* capture = app.add_subcommand("capture", "record the simulation calls of a session to a replay file");
  add_run_options(*capture, cap_opts);
  capture->add_option("-o,--out", capture_out, "capture file to write")->required();

  Overrides replay_opts;
  std::string capture_in;
  auto* replay = app.add_subcommand("replay", "drive the bridge from a capture file, no server needed");
  add_run_options(*replay, replay_opts);
  replay->add_option("capture", capture_in, "capture file")->required();

  std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : kExitUsage;
  }

  if (*check) return check_net(net_path, height, out, err);

  Overrides& o = *run ? run_opts : *capture ? cap_opts : replay_opts;
  if (auto level = spdlog::level::from_str(o.log_level); level != spdlog::level::off || o.log_level == "off") {
    spdlog::set_level(level);
  }

  AppConfig config;
  Startup startup;
  try {
    config = effective_config(o);
    if (o.print_config) {
      out << to_json(config).dump(2) << '\n';
      return 0;
    }
    startup = prepare(config);
  } catch (const std::exception& e) {
    err << "bridge: " << e.what() << '\n';
    return kExitStartup;
  }

  try {
    if (*replay) {
      return run_runtime(config, std::make_unique<ReplaySource>(capture_in), std::move(startup), out, interrupted, true);
    }
    auto source = open_source(config);
    if (*capture) {
      // the recorder only needs the producer; no consumer, OSC or viewer
      RecordingSource recorder(*source, capture_out);
      core::SharedTrafficState shared;
      core::ProducerConfig pcfg;
      pcfg.rate_n = config.bridge.rate_n;
      pcfg.step_length = config.bridge.step_length();
      pcfg.junctions = startup.junctions;
      core::Producer producer(recorder, shared, pcfg);
      const auto start = std::chrono::steady_clock::now();
      producer.start();
      while (!interrupted() && producer.running()) {
        std::this_thread::sleep_for(std::chrono::milliseconds(20));
        if (config.duration > 0 &&
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() >= config.duration) {
          break;
        }
      }
      producer.stop();
      recorder.close();
      auto stats = producer.stats();
      out << nlohmann::json{{"type", "final"}, {"steps", stats.publications}, {"lines", recorder.lines()},
                            {"sim_time", stats.last_sim_time}, {"file", capture_out}}
                 .dump()
          << std::endl;
      if (auto e = shared.terminal_error()) {
        err << "bridge: capture stopped: " << *e << '\n';
        return kExitProducerDied;
      }
      return 0;
    }
    return run_runtime(config, std::move(source), std::move(startup), out, interrupted, false);
  } catch (const traci::TraciError& e) {
    err << "bridge: cannot reach the simulation at " << config.traci.host << ":" << config.traci.port << ": "
        << e.what() << '\n';
    return kExitStartup;
  } catch (const std::exception& e) {
    err << "bridge: " << e.what() << '\n';
    return kExitStartup;
  }
}

int mock_sumo_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                   const std::function<bool()>& interrupted) {
  CLI::App app{"Deterministic TraCI server playing back a scripted scenario"};
  app.name(args.empty() ? "mock-sumo" : args.front());
  std::string scenario_path, host = "127.0.0.1";
  int port = 8813;
  app.add_option("scenario", scenario_path, "scenario file")->required();
  app.add_option("--host", host, "bind address");
  app.add_option("-p,--port", port, "TCP port (0 = ephemeral)")->check(CLI::Range(0, 65535));
  std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : kExitUsage;
  }
  try {
    auto scenario = mock::load_scenario(scenario_path);
    mock::MockServerOptions opts;
    opts.host = host;
    opts.port = static_cast<std::uint16_t>(port);
    mock::MockServer server(std::move(scenario), opts);
    server.start();
    out << nlohmann::json{{"type", "listening"}, {"host", host}, {"port", server.port()}}.dump() << std::endl;
    while (!interrupted()) std::this_thread::sleep_for(std::chrono::milliseconds(50));
    server.stop();
    return 0;
  } catch (const std::exception& e) {
    err << "mock-sumo: " << e.what() << '\n';
    return kExitStartup;
  }
}

}  // namespace tbridge::app
