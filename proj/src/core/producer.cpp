// SPDX-License-Identifier: Apache-2.0
#include "tbridge/core/producer.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <exception>
#include <stdexcept>

namespace tbridge::core {

namespace {
using Clock = std::chrono::steady_clock;

double seconds(Clock::duration d) { return std::chrono::duration<double>(d).count(); }
}  // namespace

Producer::Producer(TrafficSource& source, SharedTrafficState& shared, ProducerConfig config)
    : source_(source), shared_(shared), config_(std::move(config)) {
  if (!(config_.rate_n > 0.0) || !(config_.step_length > 0.0)) throw std::invalid_argument("producer rates must be > 0");
  stats_.last_sim_time = config_.start_time;
}

Producer::~Producer() { stop(); }

void Producer::start() {
  if (thread_.joinable()) return;
  {
    std::lock_guard lock(mu_);
    finished_ = false;
  }
  thread_ = std::jthread([this](std::stop_token token) { run(token); });
}

void Producer::stop() {
  if (!thread_.joinable()) return;
  thread_.request_stop();
  thread_.join();
}

void Producer::join() {
  if (thread_.joinable()) thread_.join();
}

bool Producer::running() const {
  std::lock_guard lock(mu_);
  return thread_.joinable() && !finished_;
}

ProducerStats Producer::stats() const {
  std::lock_guard lock(mu_);
  return stats_;
}

void Producer::run(std::stop_token token) {
  const auto period = std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(1.0 / config_.rate_n));
  std::set<std::string> active;
  std::vector<std::string> ids;
  double sim_time = config_.start_time;
  auto due = Clock::now();

  try {
    while (!token.stop_requested()) {
      PublishBatch batch;
      batch.step = source_.step(sim_time + config_.step_length);
      sim_time = batch.step.sim_time;

      for (const auto& id : batch.step.departed_ids) active.insert(id);
      for (const auto& id : batch.step.arrived_ids) active.erase(id);
      ids.assign(active.begin(), active.end());
      batch.vehicles = source_.vehicle_states(ids);
      batch.lights = source_.light_states(config_.junctions);

      const auto finished = Clock::now();
      batch.step_lag = std::max(0.0, seconds(finished - due));
      shared_.publish(batch);

      auto next = due + period;
      bool overrun = false;
      if (next < finished) {
        overrun = true;
        next = finished;
      }
      std::uint64_t iterations = 0;
      {
        std::lock_guard lock(mu_);
        iterations = ++stats_.iterations;
        ++stats_.publications;
        if (overrun) ++stats_.overruns;
        stats_.last_sim_time = sim_time;
        if (stats_.step_lag.size() >= kMaxLagSamples) stats_.step_lag.erase(stats_.step_lag.begin());
        stats_.step_lag.push_back(batch.step_lag);
      }
      if (overrun) spdlog::debug("producer overrun, lag {:.4f} s", batch.step_lag);
      if (config_.max_iterations != 0 && iterations >= config_.max_iterations) break;

      due = next;
      std::unique_lock lock(mu_);
      wake_.wait_until(lock, token, due, [] { return false; });
    }
  } catch (const std::exception& e) {
    spdlog::error("producer stopped: {}", e.what());
    shared_.set_terminal_error(e.what());
  }
  std::lock_guard lock(mu_);
  finished_ = true;
}

}  // namespace tbridge::core
