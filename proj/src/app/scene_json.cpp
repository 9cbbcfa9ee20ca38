// SPDX-License-Identifier: Apache-2.0
#include "tbridge/app/scene_json.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "tbridge/net/signal.hpp"

namespace tbridge::app {

using nlohmann::json;

json snapshot_json(const core::SceneSnapshot& s, double listener_yaw) {
  json vehicles = json::array();
  for (const auto& v : s.vehicles) {
    vehicles.push_back({{"id", v.id},
                        {"x", v.position.x},
                        {"y", v.position.y},
                        {"z", v.position.z},
                        {"yaw", v.yaw},
                        {"pitch", v.pitch},
                        {"vtype", v.vtype},
                        {"speed", v.speed},
                        {"acceleration", v.acceleration}});
  }
  json lights = json::array();
  for (const auto& l : s.lights) {
    lights.push_back({{"tl_id", l.tl_id},
                      {"link_index", l.link_index},
                      {"state", std::string(net::to_string(l.state))},
                      {"char", std::string(1, net::to_char(l.state))},
                      {"x", l.position.x},
                      {"y", l.position.y},
                      {"z", l.position.z},
                      {"yaw", l.yaw}});
  }
  return {{"type", "snapshot"},
          {"schema", kSceneSchemaVersion},
          {"tick", s.stats.tick},
          {"tick_time", s.tick_time},
          {"sim_time", s.stats.sim_time},
          {"listener", {{"x", s.listener.x}, {"y", s.listener.y}, {"z", s.listener.z}, {"yaw", listener_yaw}}},
          {"culling_radius", s.culling_radius},
          {"hysteresis", s.hysteresis},
          {"vehicles", std::move(vehicles)},
          {"lights", std::move(lights)},
          {"stats",
           {{"active", s.stats.active},
            {"pooled_free", s.stats.pooled_free},
            {"culled", s.stats.culled},
            {"known", s.stats.known},
            {"sim_time", s.stats.sim_time},
            {"step_lag", s.stats.step_lag},
            {"generation", s.stats.generation}}}};
}

std::string snapshot_text(const core::SceneSnapshot& s, double listener_yaw) { return snapshot_json(s, listener_yaw).dump(); }

std::optional<ListenerUpdate> parse_listener(std::string_view text, std::string* error) {
  auto fail = [&](std::string why) -> std::optional<ListenerUpdate> {
    if (error) *error = std::move(why);
    return std::nullopt;
  };
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return fail("not a JSON object");
  auto type = j.find("type");
  if (type == j.end() || *type != "listener") return fail("type must be \"listener\"");

  ListenerUpdate u;
  auto number = [&](const char* key, double& out, bool required) -> bool {
    auto it = j.find(key);
    if (it == j.end()) return !required;
    if (!it->is_number()) return false;
    out = it->get<double>();
    return std::isfinite(out);
  };
  if (!number("x", u.position.x, true) || !number("y", u.position.y, true) || !number("z", u.position.z, false) ||
      !number("yaw", u.yaw, false)) {
    return fail("x and y are required; x, y, z, yaw must be finite numbers");
  }
  return u;
}

std::string listener_text(const ListenerUpdate& u) {
  return json{{"type", "listener"}, {"x", u.position.x}, {"y", u.position.y}, {"z", u.position.z}, {"yaw", u.yaw}}
      .dump();
}

}  // namespace tbridge::app
