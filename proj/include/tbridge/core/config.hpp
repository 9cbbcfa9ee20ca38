// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <string>

namespace tbridge::core {

struct BridgeConfig {
  double rate_n = 10.0;              // Hz; the server step length is 1/rate_n
  double culling_radius = 300.0;     // m
  double hysteresis = 15.0;          // m beyond the radius before a vehicle is despawned
  int cull_check_period = 5;         // ticks
  int height_check_period = 10;      // ticks
  std::map<std::string, std::size_t> pool_sizes;  // initial slots per vehicle type
  std::size_t default_pool_size = 64;
  double pool_growth = 1.5;
  bool snap_pitch = false;           // two probes per vehicle instead of one
  double wheelbase = 2.7;            // m
  double probe_height = 10000.0;     // engine units

  double step_length() const { return 1.0 / rate_n; }

  /// Throws std::invalid_argument naming the first bad field.
  void validate() const;
};

}  // namespace tbridge::core
