// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tbridge/core/snapshot.hpp"
#include "tbridge/io/socket.hpp"
#include "tbridge/osc/bundle.hpp"
#include "tbridge/osc/gate.hpp"

namespace tbridge::osc {

/// Fire-and-forget UDP datagrams. Failures are counted and logged, never thrown.
class OscSender {
 public:
  OscSender(std::string host, std::uint16_t port);

  bool send(std::span<const std::uint8_t> datagram);

  std::uint64_t datagrams() const { return datagrams_; }
  std::uint64_t bytes() const { return bytes_; }
  std::uint64_t errors() const { return errors_; }

 private:
  io::UdpSocket socket_;
  std::string host_;
  std::uint16_t port_;
  std::uint64_t datagrams_ = 0;
  std::uint64_t bytes_ = 0;
  std::uint64_t errors_ = 0;
};

struct StreamerStats {
  std::uint64_t bundles = 0;
  std::uint64_t vehicle_messages = 0;
  std::uint64_t remove_messages = 0;
};

/// Runs on the consumer timeline: offer() every tick, a bundle goes out
/// whenever a send_interval boundary has been crossed.
class OscStreamer {
 public:
  OscStreamer(OscConfig config, OscSender& sender);

  /// Returns true if a bundle was sent for this snapshot.
  bool offer(const core::SceneSnapshot& snapshot, double now);

  /// Remove messages for everything still recorded (shutdown path).
  void flush_removals(double sim_time, Vec3 listener);

  const RecordTable& records() const { return records_; }
  const StreamerStats& stats() const { return stats_; }

 private:
  void transmit(const Bundle& bundle);

  OscConfig config_;
  OscSender& sender_;
  RecordTable records_;
  double next_send_ = 0.0;
  bool started_ = false;
  StreamerStats stats_;
};

}  // namespace tbridge::osc
