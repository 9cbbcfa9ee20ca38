// SPDX-License-Identifier: Apache-2.0
#include "tbridge/osc/bundle.hpp"

#include <set>

namespace tbridge::osc {

Message header_message(double sim_time, Vec3 listener) {
  return {kHeaderAddress,
          {static_cast<float>(sim_time), static_cast<float>(listener.x), static_cast<float>(listener.y),
           static_cast<float>(listener.z)}};
}

Message vehicle_message(const core::SnapshotVehicle& v, const OscConfig& config) {
  Message m{kVehicleAddress,
            {v.id, static_cast<float>(v.position.x), static_cast<float>(v.position.y), static_cast<float>(v.position.z)}};
  if (config.velocity_as_vector) {
    m.args.emplace_back(static_cast<float>(v.velocity.x));
    m.args.emplace_back(static_cast<float>(v.velocity.y));
    m.args.emplace_back(static_cast<float>(v.velocity.z));
  } else {
    m.args.emplace_back(static_cast<float>(v.speed));
  }
  m.args.emplace_back(static_cast<float>(v.acceleration));
  return m;
}

Message remove_message(const std::string& id) { return {kRemoveAddress, {id}}; }

BuildResult build_bundle(const core::SceneSnapshot& snapshot, RecordTable& records, double now, const OscConfig& config) {
  BuildResult out;
  out.bundle.messages.push_back(header_message(snapshot.stats.sim_time, snapshot.listener));

  std::set<std::string> present;
  for (const auto& v : snapshot.vehicles) {
    present.insert(v.id);
    auto& record = records[v.id];
    if (!should_send(record, v.position, v.speed, now, config).send) continue;
    out.bundle.messages.push_back(vehicle_message(v, config));
    mark_sent(record, v.position, v.speed, now);
    out.sent.push_back(v.id);
  }
  for (auto it = records.begin(); it != records.end();) {
    if (present.contains(it->first)) {
      ++it;
      continue;
    }
    if (it->second.ever_sent()) {
      out.bundle.messages.push_back(remove_message(it->first));
      out.removed.push_back(it->first);
    }
    it = records.erase(it);
  }
  return out;
}

std::vector<Bundle> split_bundle(const Bundle& bundle, std::size_t limit) {
  if (encoded_size(bundle) <= limit || bundle.messages.size() <= 1) return {bundle};

  const Message& header = bundle.messages.front();
  const std::size_t base = 16 + 4 + encoded_size(header);
  std::vector<Bundle> out;
  Bundle current{bundle.timetag, {header}};
  std::size_t size = base;
  for (std::size_t i = 1; i < bundle.messages.size(); ++i) {
    const Message& m = bundle.messages[i];
    const std::size_t element = 4 + encoded_size(m);
    if (current.messages.size() > 1 && size + element > limit) {
      out.push_back(std::move(current));
      current = Bundle{bundle.timetag, {header}};
      size = base;
    }
    current.messages.push_back(m);
    size += element;
  }
  out.push_back(std::move(current));
  return out;
}

}  // namespace tbridge::osc
