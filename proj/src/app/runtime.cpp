// SPDX-License-Identifier: Apache-2.0
#include "tbridge/app/runtime.hpp"

#include <spdlog/spdlog.h>

#include <chrono>
#include <nlohmann/json.hpp>

#include "tbridge/mock/scenario.hpp"
#include "tbridge/mock/server.hpp"
#include "tbridge/net/network.hpp"
#include "tbridge/traci/session.hpp"

namespace tbridge::app {

using Clock = std::chrono::steady_clock;

namespace {

double seconds(Clock::duration d) { return std::chrono::duration<double>(d).count(); }

osc::OscConfig osc_config(const AppConfig& c) {
  osc::OscConfig o = c.osc;
  o.units_per_meter = c.mapper.units_per_meter;
  return o;
}

nlohmann::json stats_json(const char* type, const RunSummary& s, const core::SceneSnapshot* snap,
                          std::size_t clients) {
  nlohmann::json j{{"type", type},
                   {"ticks", s.ticks},
                   {"wall_s", s.wall_seconds},
                   {"ticks_per_s", s.ticks_per_second()},
                   {"sim_time", s.sim_time},
                   {"publications", s.producer.publications},
                   {"overruns", s.producer.overruns},
                   {"osc_bundles", s.osc.bundles},
                   {"osc_vehicle_messages", s.osc.vehicle_messages},
                   {"osc_remove_messages", s.osc.remove_messages},
                   {"scene_clients", clients},
                   {"scene_dropped", s.scene.dropped_slow}};
  if (!s.producer.step_lag.empty()) j["step_lag"] = s.producer.step_lag.back();
  if (snap) {
    j["active"] = snap->stats.active;
    j["culled"] = snap->stats.culled;
    j["pooled_free"] = snap->stats.pooled_free;
  }
  if (s.error) j["error"] = *s.error;
  return j;
}

}  // namespace

Startup prepare(const AppConfig& config) {
  config.validate_files();
  Startup s;
  auto network = net::load_network(config.net_file);
  s.lanes = network.lanes.size();
  s.connections = network.connection_count;
  s.plan = net::plan_traffic_lights(network, config.lights.height_offset, config.mapper, config.lights.face_approach);
  for (const auto& [tl, links] : s.plan.index) s.junctions.push_back(tl);
  s.terrain = config.heightfield.empty() ? geo::HeightField::flat(0.0) : geo::HeightField::load(config.heightfield);
  spdlog::info("network {}: {} lanes, {} connections, {} light heads at {} junctions", config.net_file, s.lanes,
               s.connections, s.plan.spawns.size(), s.junctions.size());
  return s;
}

std::unique_ptr<TrafficSource> open_source(const AppConfig& config) {
  if (!config.mock_scenario.empty()) {
    auto scenario = mock::load_scenario(config.mock_scenario);
    if (std::abs(scenario.step_length - config.bridge.step_length()) > 1e-12) {
      spdlog::warn("mock scenario step_length {} differs from 1/rate_n = {}", scenario.step_length,
                   config.bridge.step_length());
    }
    return std::make_unique<mock::MockSource>(std::move(scenario));
  }
  traci::RetryPolicy policy{config.traci.connect_attempts, std::chrono::milliseconds(config.traci.connect_delay_ms)};
  return std::make_unique<traci::TraciSession>(traci::TraciSession::connect(config.traci.host, config.traci.port, policy));
}

Consumer::Consumer(const AppConfig& config, Startup startup, const core::SharedTrafficState& shared,
                   ListenerCell& listener, osc::OscSender* osc_sender)
    : bridge_(config.bridge, config.mapper, std::move(startup.terrain), std::move(startup.plan), shared),
      listener_(listener) {
  if (osc_sender) streamer_.emplace(osc_config(config), *osc_sender);
}

const core::SceneSnapshot& Consumer::tick(double dt) {
  if (auto v = listener_.version(); v != listener_version_) {
    listener_version_ = v;
    if (auto u = listener_.latest()) {
      bridge_.set_listener(u->position);
      listener_yaw_ = u->yaw;
    }
  }
  const auto& snap = bridge_.tick(dt);
  if (streamer_) streamer_->offer(snap, bridge_.tick_time());
  return snap;
}

void Consumer::shutdown() {
  if (streamer_) streamer_->flush_removals(bridge_.snapshot().stats.sim_time, bridge_.listener());
  bridge_.clear();
}

Broadcaster::Broadcaster(SceneServer& server, double rate)
    : server_(server), period_(1.0 / rate), thread_([this](std::stop_token t) { run(t); }) {}

Broadcaster::~Broadcaster() { stop(); }

void Broadcaster::stop() {
  thread_.request_stop();
  if (thread_.joinable()) thread_.join();
}

void Broadcaster::offer(const core::SceneSnapshot& snapshot, double listener_yaw, double now) {
  if (now < next_due_) return;
  next_due_ += period_;
  if (next_due_ <= now) next_due_ = now + period_;
  if (server_.client_count() == 0) return;
  {
    std::lock_guard lock(mu_);
    if (pending_) ++superseded_;
    pending_.emplace(snapshot, listener_yaw);
    ++queued_;
  }
  cv_.notify_one();
}

std::uint64_t Broadcaster::queued() const {
  std::lock_guard lock(mu_);
  return queued_;
}

std::uint64_t Broadcaster::superseded() const {
  std::lock_guard lock(mu_);
  return superseded_;
}

void Broadcaster::run(std::stop_token token) {
  while (true) {
    std::pair<core::SceneSnapshot, double> item;
    {
      std::unique_lock lock(mu_);
      if (!cv_.wait(lock, token, [this] { return pending_.has_value(); })) return;
      item = std::move(*pending_);
      pending_.reset();
    }
    server_.broadcast(snapshot_text(item.first, item.second));
  }
}

Runtime::Runtime(AppConfig config, Startup startup, std::unique_ptr<TrafficSource> source)
    : config_(std::move(config)), startup_(std::move(startup)), source_(std::move(source)) {
  if (config_.scene.enabled) {
    server_ = std::make_unique<SceneServer>(
        SceneServerOptions{config_.scene.host, config_.scene.port, config_.scene.queue_depth, "/scene"}, listener_);
  }
}

Runtime::~Runtime() = default;

std::optional<core::SceneSnapshot> Runtime::last_snapshot() const {
  std::lock_guard lock(last_mu_);
  return last_;
}

RunSummary Runtime::run(const std::function<bool()>& stop_requested, std::ostream* stats_out) {
  RunSummary summary;
  core::SharedTrafficState shared;
  core::ProducerConfig pcfg;
  pcfg.rate_n = config_.bridge.rate_n;
  pcfg.step_length = config_.bridge.step_length();
  pcfg.junctions = startup_.junctions;
  core::Producer producer(*source_, shared, pcfg);

  std::optional<osc::OscSender> sender;
  if (config_.osc_enabled) sender.emplace(config_.osc.host, config_.osc.port);
  Consumer consumer(config_, startup_, shared, listener_, sender ? &*sender : nullptr);
  std::optional<Broadcaster> broadcaster;
  if (server_) broadcaster.emplace(*server_, config_.scene.broadcast_rate);

  auto emit = [&](const char* type, const core::SceneSnapshot* snap) {
    if (!stats_out) return;
    *stats_out << stats_json(type, summary, snap, server_ ? server_->client_count() : 0).dump() << std::endl;
  };
  auto refresh = [&] {
    summary.producer = producer.stats();
    summary.sim_time = summary.producer.last_sim_time;
    if (consumer.streamer()) summary.osc = consumer.streamer()->stats();
    if (server_) summary.scene = server_->stats();
  };

  const auto period = std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(1.0 / config_.tick_rate));
  const auto start = Clock::now();
  auto last = start;
  auto next = start + period;
  auto next_stats = start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(config_.stats_interval));

  producer.start();
  spdlog::info("running: N = {} Hz, tick rate {} Hz", config_.bridge.rate_n, config_.tick_rate);

  while (!stop_requested()) {
    std::this_thread::sleep_until(next);
    const auto now = Clock::now();
    const double dt = seconds(now - last);
    last = now;
    const auto& snap = consumer.tick(dt);
    ++summary.ticks;
    if (broadcaster) broadcaster->offer(snap, consumer.listener_yaw(), consumer.bridge().tick_time());
    {
      std::lock_guard lock(last_mu_);
      last_ = snap;
    }
    summary.wall_seconds = seconds(now - start);

    if (consumer.bridge().terminal_error()) {
      summary.error = *consumer.bridge().terminal_error();
      summary.exit_code = kExitProducerDied;
      spdlog::error("producer died, shutting down: {}", *summary.error);
      break;
    }
    if (config_.stats_interval > 0 && now >= next_stats) {
      refresh();
      emit("stats", &snap);
      next_stats += std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(config_.stats_interval));
    }
    if (config_.duration > 0 && summary.wall_seconds >= config_.duration) break;

    next += period;
    if (next < now) next = now;  // late ticks are not replayed
  }

  producer.stop();
  // pick up a batch published after the last tick so the final state is current
  if (!summary.error) {
    const auto& snap = consumer.tick(0.0);
    std::lock_guard lock(last_mu_);
    last_ = snap;
  }
  if (broadcaster) broadcaster->stop();
  consumer.shutdown();
  source_->close();
  summary.wall_seconds = seconds(Clock::now() - start);
  refresh();
  emit("final", &consumer.bridge().snapshot());
  spdlog::info("stopped after {} ticks, sim_time {:.1f} s", summary.ticks, summary.sim_time);
  return summary;
}

}  // namespace tbridge::app
