// SPDX-License-Identifier: Apache-2.0
#pragma once

// Drives a Bridge on a simulated clock. Batch k is published at k * step and
// a tick covering (t0, t1] sees every batch published at or before t0. Times
// are integer microseconds so batch boundaries are hit exactly.
//
// A boundary record for batch k holds the plane positions right before the
// bridge pulls anything newer than k. Schedules that tick less often than the
// step skip some k.

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "tbridge/core/bridge.hpp"
#include "tbridge/core/shared_state.hpp"

namespace tbridge::test {

using Micros = std::int64_t;

struct Trajectory {
  std::string id;
  std::string vtype = "car";
  std::size_t first_batch = 0;  // batch that carries the first sample
  std::vector<VehicleState> samples;  // one per batch while alive; arrives after the last
};

/// Random straight-ish trajectories with staggered departures and arrivals.
inline std::vector<Trajectory> random_trajectories(std::mt19937_64& rng, std::size_t vehicles, std::size_t batches,
                                                   double step) {
  std::uniform_real_distribution<double> coord(-250.0, 250.0), speed(0.0, 20.0), turn(-20.0, 20.0);
  std::uniform_int_distribution<std::size_t> start(0, batches / 2);
  std::vector<Trajectory> out;
  for (std::size_t v = 0; v < vehicles; ++v) {
    Trajectory t;
    t.id = "veh" + std::to_string(v);
    t.vtype = v % 3 == 0 ? "bus" : "car";
    t.first_batch = start(rng);
    std::uniform_int_distribution<std::size_t> life(1, batches - t.first_batch);
    std::size_t n = life(rng);
    Vec2 p{coord(rng), coord(rng)};
    double angle = std::uniform_real_distribution<double>(0.0, 360.0)(rng);
    for (std::size_t k = 0; k < n; ++k) {
      double s = speed(rng);
      angle = std::fmod(angle + turn(rng) + 360.0, 360.0);
      VehicleState st;
      st.id = t.id;
      st.vtype = t.vtype;
      st.position = p;
      st.angle = angle;
      st.speed = s;
      st.sim_time = static_cast<double>(t.first_batch + k) * step;
      t.samples.push_back(st);
      const double rad = angle * M_PI / 180.0;
      p = p + Vec2{std::sin(rad), std::cos(rad)} * (s * step);
    }
    out.push_back(std::move(t));
  }
  return out;
}

inline std::vector<core::PublishBatch> to_batches(const std::vector<Trajectory>& trajectories, std::size_t batches,
                                                  double step) {
  std::vector<core::PublishBatch> out(batches);
  for (std::size_t k = 0; k < batches; ++k) out[k].step.sim_time = static_cast<double>(k) * step;
  for (const auto& t : trajectories) {
    for (std::size_t i = 0; i < t.samples.size(); ++i) {
      auto& b = out[t.first_batch + i];
      if (i == 0) b.step.departed_ids.push_back(t.id);
      b.vehicles.push_back(t.samples[i]);
    }
    std::size_t gone = t.first_batch + t.samples.size();
    if (gone < batches) out[gone].step.arrived_ids.push_back(t.id);
  }
  return out;
}

/// Tick times (exclusive of 0) up to `end`. With `split`, a tick that would
/// straddle a batch boundary is cut there.
inline std::vector<Micros> fixed_schedule(Micros period, Micros step, Micros end, bool split = true) {
  std::vector<Micros> out;
  Micros t = 0, nominal = 0;
  while (t < end) {
    if (t >= nominal) nominal += period;
    Micros boundary = (t / step + 1) * step;
    t = std::min({nominal, split ? boundary : nominal, end});
    out.push_back(t);
  }
  return out;
}

inline std::vector<Micros> random_schedule(std::mt19937_64& rng, double min_hz, double max_hz, Micros step,
                                           Micros end) {
  std::uniform_real_distribution<double> hz(min_hz, max_hz);
  std::vector<Micros> out;
  Micros t = 0;
  while (t < end) {
    Micros next = t + std::max<Micros>(1, static_cast<Micros>(std::llround(1e6 / hz(rng))));
    Micros boundary = (t / step + 1) * step;
    t = std::min({next, boundary, end});
    out.push_back(t);
  }
  return out;
}

struct BoundaryRecord {
  // batch boundary index -> vehicle id -> plane position
  std::map<std::size_t, std::map<std::string, Vec2>> positions;
};

/// Runs `bridge` over the schedule, publishing batches into `shared` as their
/// time comes. `on_tick` is called after every tick with the tick end time.
template <typename OnTick>
BoundaryRecord run_timeline(core::Bridge& bridge, core::SharedTrafficState& shared,
                            const std::vector<core::PublishBatch>& batches, Micros step,
                            const std::vector<Micros>& schedule, OnTick&& on_tick) {
  BoundaryRecord record;
  std::size_t next_batch = 0;
  Micros t0 = 0;
  for (Micros t1 : schedule) {
    while (next_batch < batches.size() && static_cast<Micros>(next_batch) * step <= t0) shared.publish(batches[next_batch++]);
    bridge.tick(static_cast<double>(t1 - t0) * 1e-6);
    bool last = t1 == schedule.back();
    if (next_batch > 0 && (last || (next_batch < batches.size() && static_cast<Micros>(next_batch) * step <= t1))) {
      auto& slot = record.positions[next_batch - 1];
      for (const auto& [id, e] : bridge.entities()) slot[id] = core::plane_position(e);
    }
    on_tick(t1);
    t0 = t1;
  }
  return record;
}

inline BoundaryRecord run_timeline(core::Bridge& bridge, core::SharedTrafficState& shared,
                                   const std::vector<core::PublishBatch>& batches, Micros step,
                                   const std::vector<Micros>& schedule) {
  return run_timeline(bridge, shared, batches, step, schedule, [](Micros) {});
}

}  // namespace tbridge::test
