// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tbridge/common/vec.hpp"
#include "tbridge/geo/mapper.hpp"
#include "tbridge/net/network.hpp"
#include "tbridge/net/signal.hpp"

namespace tbridge::net {

/// Index of an entry in TrafficLightPlan::spawns.
struct SpawnHandle {
  std::size_t value = 0;
  friend auto operator<=>(SpawnHandle, SpawnHandle) = default;
};

struct LightSpawn {
  std::string tl_id;
  int link_index = 0;
  Vec3 position;  // engine space
  double yaw = 0.0;  // engine yaw, degrees
};

/// Where each signal head goes and how signal-string characters reach it:
/// junction id -> link index -> every spawn driven by that link.
struct TrafficLightPlan {
  std::vector<LightSpawn> spawns;
  std::map<std::string, std::map<int, std::vector<SpawnHandle>>> index;

  std::size_t junction_count() const { return index.size(); }
};

inline constexpr double kDefaultLightHeight = 3.0;

/// One spawn per controlled connection, placed at the last shape point of the
/// incoming lane raised by `height_offset`, facing along the lane's final
/// segment (second-to-last -> last point). `face_approach` turns the head 180°
/// to face back toward the approaching traffic instead.
///
/// Throws NetError{DanglingLane} when a connection's incoming lane is unknown.
TrafficLightPlan plan_traffic_lights(const Network& network, double height_offset, const geo::CoordinateMapper& mapper,
                                     bool face_approach = false);

/// Pairs every planned head of `tl_id` with the character at its link index;
/// links beyond the end of `state` get Unknown. Ordered by link index. An
/// unknown `tl_id` yields an empty list.
std::vector<std::pair<SpawnHandle, SignalState>> apply_signal_string(const TrafficLightPlan& plan, std::string_view tl_id,
                                                                     std::string_view state);

}  // namespace tbridge::net
