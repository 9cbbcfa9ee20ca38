// SPDX-License-Identifier: Apache-2.0
#include "tbridge/app/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

namespace tbridge::app {

using nlohmann::json;

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("invalid config: " + what);
}

// Reads the keys of one JSON object into fields, rejecting anything it does not know.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + ": expected an object");
  }
  ~ObjectReader() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (const auto& [key, value] : j_.items()) {
      if (!known_.contains(key)) throw ConfigError(path_ + "." + key + ": unknown key");
    }
  }

  template <typename T>
  void field(const char* key, T& out) {
    known_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(path_ + "." + key + ": " + e.what());
    }
  }

  const json* object(const char* key) {
    known_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  std::string child(const char* key) const { return path_ + "." + key; }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string, std::less<>> known_;
};

std::string resolve(const std::string& p, const std::filesystem::path& base) {
  if (p.empty() || base.empty()) return p;
  std::filesystem::path path(p);
  return path.is_absolute() ? p : (base / path).lexically_normal().string();
}

bool positive(double v) { return v > 0.0 && std::isfinite(v); }

}  // namespace

void AppConfig::validate() const {
  require(traci.port != 0 || !mock_scenario.empty(), "traci.port must be > 0");
  require(traci.connect_attempts >= 1, "traci.connect_attempts must be >= 1");
  require(traci.connect_delay_ms >= 0, "traci.connect_delay_ms must be >= 0");
  require(positive(tick_rate), "tick_rate must be > 0");
  require(stats_interval >= 0.0, "stats_interval must be >= 0");
  require(duration >= 0.0, "duration must be >= 0");
  require(std::isfinite(lights.height_offset), "lights.height_offset must be finite");
  require(positive(scene.broadcast_rate), "scene.broadcast_rate must be > 0");
  require(scene.queue_depth >= 1, "scene.queue_depth must be >= 1");
  try {
    mapper.validate();
    bridge.validate();
    osc.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
}

void AppConfig::validate_files() const {
  validate();
  require(!net_file.empty(), "net_file is required");
  auto exists = [](const std::string& what, const std::string& path) {
    if (!std::filesystem::is_regular_file(path)) throw ConfigError(what + " not found: " + path);
  };
  exists("net file", net_file);
  if (!heightfield.empty()) exists("heightfield", heightfield);
  if (!mock_scenario.empty()) exists("mock scenario", mock_scenario);
}

json to_json(const AppConfig& c) {
  json pools = json::object();
  for (const auto& [vtype, n] : c.bridge.pool_sizes) pools[vtype] = n;
  return {
      {"traci",
       {{"host", c.traci.host},
        {"port", c.traci.port},
        {"connect_attempts", c.traci.connect_attempts},
        {"connect_delay_ms", c.traci.connect_delay_ms}}},
      {"mock_scenario", c.mock_scenario},
      {"net_file", c.net_file},
      {"heightfield", c.heightfield},
      {"mapper",
       {{"offset_x", c.mapper.offset_x},
        {"offset_y", c.mapper.offset_y},
        {"units_per_meter", c.mapper.units_per_meter},
        {"yaw_offset", c.mapper.yaw_offset},
        {"flip_yaw_sign", c.mapper.flip_yaw_sign}}},
      {"lights", {{"height_offset", c.lights.height_offset}, {"face_approach", c.lights.face_approach}}},
      {"bridge",
       {{"rate_n", c.bridge.rate_n},
        {"culling_radius", c.bridge.culling_radius},
        {"hysteresis", c.bridge.hysteresis},
        {"cull_check_period", c.bridge.cull_check_period},
        {"height_check_period", c.bridge.height_check_period},
        {"pool_sizes", pools},
        {"default_pool_size", c.bridge.default_pool_size},
        {"pool_growth", c.bridge.pool_growth},
        {"snap_pitch", c.bridge.snap_pitch},
        {"wheelbase", c.bridge.wheelbase},
        {"probe_height", c.bridge.probe_height}}},
      {"osc",
       {{"enabled", c.osc_enabled},
        {"host", c.osc.host},
        {"port", c.osc.port},
        {"send_interval", c.osc.send_interval},
        {"delta_pos", c.osc.delta_pos},
        {"delta_vel", c.osc.delta_vel},
        {"keep_alive", c.osc.keep_alive},
        {"datagram_limit", c.osc.datagram_limit},
        {"velocity_as_vector", c.osc.velocity_as_vector}}},
      {"scene",
       {{"enabled", c.scene.enabled},
        {"host", c.scene.host},
        {"port", c.scene.port},
        {"broadcast_rate", c.scene.broadcast_rate},
        {"queue_depth", c.scene.queue_depth}}},
      {"tick_rate", c.tick_rate},
      {"stats_interval", c.stats_interval},
      {"duration", c.duration},
  };
}

void merge_json(AppConfig& c, const json& j, const std::filesystem::path& base) {
  ObjectReader root(j, "$");
  if (const json* t = root.object("traci")) {
    ObjectReader r(*t, root.child("traci"));
    r.field("host", c.traci.host);
    r.field("port", c.traci.port);
    r.field("connect_attempts", c.traci.connect_attempts);
    r.field("connect_delay_ms", c.traci.connect_delay_ms);
  }
  root.field("mock_scenario", c.mock_scenario);
  root.field("net_file", c.net_file);
  root.field("heightfield", c.heightfield);
  if (const json* m = root.object("mapper")) {
    ObjectReader r(*m, root.child("mapper"));
    r.field("offset_x", c.mapper.offset_x);
    r.field("offset_y", c.mapper.offset_y);
    r.field("units_per_meter", c.mapper.units_per_meter);
    r.field("yaw_offset", c.mapper.yaw_offset);
    r.field("flip_yaw_sign", c.mapper.flip_yaw_sign);
  }
  if (const json* l = root.object("lights")) {
    ObjectReader r(*l, root.child("lights"));
    r.field("height_offset", c.lights.height_offset);
    r.field("face_approach", c.lights.face_approach);
  }
  if (const json* b = root.object("bridge")) {
    ObjectReader r(*b, root.child("bridge"));
    r.field("rate_n", c.bridge.rate_n);
    r.field("culling_radius", c.bridge.culling_radius);
    r.field("hysteresis", c.bridge.hysteresis);
    r.field("cull_check_period", c.bridge.cull_check_period);
    r.field("height_check_period", c.bridge.height_check_period);
    r.field("pool_sizes", c.bridge.pool_sizes);
    r.field("default_pool_size", c.bridge.default_pool_size);
    r.field("pool_growth", c.bridge.pool_growth);
    r.field("snap_pitch", c.bridge.snap_pitch);
    r.field("wheelbase", c.bridge.wheelbase);
    r.field("probe_height", c.bridge.probe_height);
  }
  if (const json* o = root.object("osc")) {
    ObjectReader r(*o, root.child("osc"));
    r.field("enabled", c.osc_enabled);
    r.field("host", c.osc.host);
    r.field("port", c.osc.port);
    r.field("send_interval", c.osc.send_interval);
    r.field("delta_pos", c.osc.delta_pos);
    r.field("delta_vel", c.osc.delta_vel);
    r.field("keep_alive", c.osc.keep_alive);
    r.field("datagram_limit", c.osc.datagram_limit);
    r.field("velocity_as_vector", c.osc.velocity_as_vector);
  }
  if (const json* s = root.object("scene")) {
    ObjectReader r(*s, root.child("scene"));
    r.field("enabled", c.scene.enabled);
    r.field("host", c.scene.host);
    r.field("port", c.scene.port);
    r.field("broadcast_rate", c.scene.broadcast_rate);
    r.field("queue_depth", c.scene.queue_depth);
  }
  root.field("tick_rate", c.tick_rate);
  root.field("stats_interval", c.stats_interval);
  root.field("duration", c.duration);

  c.mock_scenario = resolve(c.mock_scenario, base);
  c.net_file = resolve(c.net_file, base);
  c.heightfield = resolve(c.heightfield, base);
}

AppConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config file not found: " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  AppConfig c;
  merge_json(c, j, path.parent_path());
  return c;
}

}  // namespace tbridge::app
