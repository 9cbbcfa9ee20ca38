// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "tbridge/core/config.hpp"
#include "tbridge/geo/mapper.hpp"
#include "tbridge/osc/gate.hpp"

namespace tbridge::app {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TraciEndpoint {
  std::string host = "127.0.0.1";
  std::uint16_t port = 8813;
  int connect_attempts = 10;
  int connect_delay_ms = 500;
};

struct LightConfig {
  double height_offset = 3.0;  // engine units above the lane end
  bool face_approach = false;
};

struct SceneConfig {
  bool enabled = true;
  std::string host = "127.0.0.1";
  std::uint16_t port = 8765;
  double broadcast_rate = 20.0;  // snapshots/s
  std::size_t queue_depth = 8;   // pending messages before a client is dropped
};

struct AppConfig {
  TraciEndpoint traci;
  std::string mock_scenario;  // non-empty: run an in-process mock instead of connecting
  std::string net_file;
  std::string heightfield;  // empty: flat ground at z = 0
  geo::CoordinateMapper mapper;
  LightConfig lights;
  core::BridgeConfig bridge;
  bool osc_enabled = true;
  osc::OscConfig osc;
  SceneConfig scene;
  double tick_rate = 60.0;      // consumer ticks/s
  double stats_interval = 1.0;  // s between stats lines, 0 = off
  double duration = 0.0;        // s of wall time before a clean exit, 0 = until interrupted

  /// Rates, periods and nested configs. Throws ConfigError naming the field.
  void validate() const;
  /// validate() plus: a net file is set and exists (and the heightfield / scenario when set).
  void validate_files() const;
};

/// Every field, nested as in the file format.
nlohmann::json to_json(const AppConfig& config);

/// Overlays `j` onto `config`. Unknown keys and wrong types throw ConfigError
/// with the JSON path. Relative file paths resolve against `base_dir`.
void merge_json(AppConfig& config, const nlohmann::json& j, const std::filesystem::path& base_dir = {});

/// Defaults overlaid with the file.
AppConfig load_config(const std::filesystem::path& path);

}  // namespace tbridge::app
