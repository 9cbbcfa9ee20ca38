// SPDX-License-Identifier: Apache-2.0
#include "tbridge/osc/streamer.hpp"

#include <spdlog/spdlog.h>

#include <cstring>

namespace tbridge::osc {

OscSender::OscSender(std::string host, std::uint16_t port)
    : socket_(io::UdpSocket::open()), host_(std::move(host)), port_(port) {}

bool OscSender::send(std::span<const std::uint8_t> datagram) {
  const int err = socket_.send_to(host_, port_, datagram);
  if (err != 0) {
    // logged on the first failure and then every 1000th to keep the tick loop quiet
    if (errors_++ % 1000 == 0) spdlog::warn("osc send to {}:{} failed: {}", host_, port_, std::strerror(err));
    return false;
  }
  ++datagrams_;
  bytes_ += datagram.size();
  return true;
}

OscStreamer::OscStreamer(OscConfig config, OscSender& sender) : config_(std::move(config)), sender_(sender) {
  config_.validate();
}

void OscStreamer::transmit(const Bundle& bundle) {
  for (const auto& part : split_bundle(bundle, config_.datagram_limit)) {
    const auto bytes = encode(part);
    if (bytes.size() > config_.datagram_limit) spdlog::warn("osc bundle of {} bytes exceeds the datagram limit", bytes.size());
    sender_.send(bytes);
    ++stats_.bundles;
  }
}

bool OscStreamer::offer(const core::SceneSnapshot& snapshot, double now) {
  if (started_ && now < next_send_) return false;
  started_ = true;
  next_send_ += config_.send_interval;
  if (next_send_ <= now) next_send_ = now + config_.send_interval;  // skipped intervals are not made up

  auto result = build_bundle(snapshot, records_, now, config_);
  stats_.vehicle_messages += result.sent.size();
  stats_.remove_messages += result.removed.size();
  transmit(result.bundle);
  return true;
}

void OscStreamer::flush_removals(double sim_time, Vec3 listener) {
  Bundle bundle{kImmediately, {header_message(sim_time, listener)}};
  for (const auto& [id, record] : records_) {
    if (record.ever_sent()) bundle.messages.push_back(remove_message(id));
  }
  stats_.remove_messages += bundle.messages.size() - 1;
  records_.clear();
  if (bundle.messages.size() > 1) transmit(bundle);
}

}  // namespace tbridge::osc
