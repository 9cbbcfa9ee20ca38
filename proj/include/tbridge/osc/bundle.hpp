// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "tbridge/core/snapshot.hpp"
#include "tbridge/osc/gate.hpp"
#include "tbridge/osc/packet.hpp"

namespace tbridge::osc {

inline constexpr const char* kHeaderAddress = "/traffic/header";
inline constexpr const char* kVehicleAddress = "/traffic/vehicle";
inline constexpr const char* kRemoveAddress = "/traffic/vehicle/remove";

using RecordTable = std::map<std::string, OscVehicleRecord>;

struct BuildResult {
  Bundle bundle;
  std::vector<std::string> sent;     // vehicles that passed the gate
  std::vector<std::string> removed;  // vehicles that left the snapshot since their last send
};

/// header: f sim_time, f listener x, y, z
Message header_message(double sim_time, Vec3 listener);

/// s id, f x, f y, f z, f speed, f acceleration
/// or with velocity_as_vector: s id, f x, f y, f z, f vx, f vy, f vz, f acceleration
Message vehicle_message(const core::SnapshotVehicle& v, const OscConfig& config);

Message remove_message(const std::string& id);

/// Header first, then one vehicle message per snapshot vehicle passing
/// should_send, then a remove message for every recorded vehicle no longer in
/// the snapshot (its record is dropped, so a later reappearance is a first
/// transmission again). Records of sent vehicles are updated.
BuildResult build_bundle(const core::SceneSnapshot& snapshot, RecordTable& records, double now, const OscConfig& config);

/// Splits a bundle whose first message is the header into bundles of at most
/// `limit` encoded bytes, each starting with that header. A message too large
/// to fit next to the header on its own still gets a bundle of its own.
std::vector<Bundle> split_bundle(const Bundle& bundle, std::size_t limit);

}  // namespace tbridge::osc
