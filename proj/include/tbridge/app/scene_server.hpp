// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "tbridge/app/scene_json.hpp"

namespace tbridge::app {

/// Latest listener position from any client. Writers overwrite, readers take
/// whatever is newest; nothing queues.
class ListenerCell {
 public:
  void set(const ListenerUpdate& update) {
    std::lock_guard lock(mu_);
    latest_ = update;
    ++version_;
  }
  std::optional<ListenerUpdate> latest() const {
    std::lock_guard lock(mu_);
    return latest_;
  }
  std::uint64_t version() const {
    std::lock_guard lock(mu_);
    return version_;
  }

 private:
  mutable std::mutex mu_;
  std::optional<ListenerUpdate> latest_;
  std::uint64_t version_ = 0;
};

struct SceneServerOptions {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;  // 0 = ephemeral
  std::size_t queue_depth = 8;
  std::string path = "/scene";
};

struct SceneServerStats {
  std::uint64_t accepted = 0;
  std::uint64_t rejected_upgrades = 0;  // wrong path or not a WebSocket request
  std::uint64_t dropped_slow = 0;
  std::uint64_t messages_sent = 0;
  std::uint64_t listener_updates = 0;
  std::uint64_t bad_messages = 0;
};

/// WebSocket fan-out of scene snapshots on its own I/O thread. Clients that
/// fall `queue_depth` messages behind are disconnected; broadcast() never
/// blocks the caller on a client.
class SceneServer {
 public:
  /// Binds and starts serving. Throws std::system_error if the address is taken.
  SceneServer(SceneServerOptions options, ListenerCell& listener);
  ~SceneServer();
  SceneServer(const SceneServer&) = delete;
  SceneServer& operator=(const SceneServer&) = delete;

  std::uint16_t port() const;
  std::size_t client_count() const;
  SceneServerStats stats() const;

  /// Queues `text` for every connected client.
  void broadcast(std::string text);

  /// Closes every connection and joins the I/O thread. Idempotent.
  void stop();

 struct Impl;  // opaque, defined in scene_server.cpp

 private:
  std::unique_ptr<Impl> impl_;
};

}  // namespace tbridge::app
