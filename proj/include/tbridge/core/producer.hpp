// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <mutex>
#include <optional>
#include <set>
#include <stop_token>
#include <string>
#include <thread>
#include <vector>

#include "tbridge/common/traffic_source.hpp"
#include "tbridge/core/shared_state.hpp"

namespace tbridge::core {

struct ProducerConfig {
  double rate_n = 10.0;          // iterations per wall-clock second
  double step_length = 0.1;      // simulated seconds per iteration
  double start_time = 0.0;       // sim time before the first step
  std::vector<std::string> junctions;  // signal strings polled each iteration
  std::uint64_t max_iterations = 0;    // 0 = until stopped
};

struct ProducerStats {
  std::uint64_t iterations = 0;
  std::uint64_t publications = 0;
  std::uint64_t overruns = 0;  // iterations that finished after the next one was due
  double last_sim_time = 0.0;
  std::vector<double> step_lag;  // s per iteration, most recent kMaxLagSamples
};

/// Polls a TrafficSource at a fixed rate on its own thread and publishes one
/// batch per step into a SharedTrafficState.
///
/// Iteration k is due at start + k / rate_n. After an overrun the schedule
/// restarts from the moment the late iteration finished; missed steps are not
/// replayed in a burst, the delay shows up in step_lag instead. step_lag is
/// the time from an iteration's due time until its batch was published.
class Producer {
 public:
  static constexpr std::size_t kMaxLagSamples = 1 << 16;

  Producer(TrafficSource& source, SharedTrafficState& shared, ProducerConfig config);
  ~Producer();

  Producer(const Producer&) = delete;
  Producer& operator=(const Producer&) = delete;

  void start();
  /// Requests a stop and joins. Returns within about one period.
  void stop();
  bool running() const;
  /// Waits until the thread exits by itself (error or max_iterations).
  void join();

  ProducerStats stats() const;

 private:
  void run(std::stop_token token);

  TrafficSource& source_;
  SharedTrafficState& shared_;
  ProducerConfig config_;

  mutable std::mutex mu_;
  std::condition_variable_any wake_;
  ProducerStats stats_;
  bool finished_ = false;
  std::jthread thread_;
};

}  // namespace tbridge::core
