// SPDX-License-Identifier: Apache-2.0
#include "tbridge/net/light_plan.hpp"

#include <spdlog/spdlog.h>

namespace tbridge::net {

TrafficLightPlan plan_traffic_lights(const Network& network, double height_offset, const geo::CoordinateMapper& mapper,
                                     bool face_approach) {
  TrafficLightPlan plan;
  plan.spawns.reserve(network.tl_connections.size());
  for (const auto& c : network.tl_connections) {
    auto it = network.lanes.find(c.lane_in);
    if (it == network.lanes.end()) {
      throw NetError(NetErrc::DanglingLane,
                     "connection " + c.tl_id + ":" + std::to_string(c.link_index) + " references lane '" + c.lane_in + "'");
    }
    const auto& shape = it->second.shape;
    Vec2 last = mapper.to_engine(shape[shape.size() - 1]);
    Vec2 prev = mapper.to_engine(shape[shape.size() - 2]);

    LightSpawn spawn;
    spawn.tl_id = c.tl_id;
    spawn.link_index = c.link_index;
    spawn.position = {last.x, last.y, height_offset};
    spawn.yaw = mapper.heading_of(last - prev);
    if (face_approach) spawn.yaw = geo::normalize_degrees(spawn.yaw + 180.0);

    SpawnHandle handle{plan.spawns.size()};
    plan.spawns.push_back(std::move(spawn));
    plan.index[c.tl_id][c.link_index].push_back(handle);
  }
  return plan;
}

std::vector<std::pair<SpawnHandle, SignalState>> apply_signal_string(const TrafficLightPlan& plan, std::string_view tl_id,
                                                                     std::string_view state) {
  std::vector<std::pair<SpawnHandle, SignalState>> out;
  auto it = plan.index.find(std::string(tl_id));
  if (it == plan.index.end()) {
    spdlog::debug("signal state for unplanned junction '{}'", tl_id);
    return out;
  }
  for (const auto& [link, handles] : it->second) {
    SignalState s = static_cast<std::size_t>(link) < state.size() ? signal_from_char(state[static_cast<std::size_t>(link)])
                                                                   : SignalState::Unknown;
    for (auto h : handles) out.emplace_back(h, s);
  }
  return out;
}

}  // namespace tbridge::net
