// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tbridge::io {

/// Owning POSIX file descriptor.
class Fd {
 public:
  Fd() = default;
  explicit Fd(int fd) : fd_(fd) {}
  Fd(Fd&& other) noexcept : fd_(other.release()) {}
  Fd& operator=(Fd&& other) noexcept;
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  ~Fd() { reset(); }

  int get() const { return fd_; }
  bool valid() const { return fd_ >= 0; }
  int release() {
    int fd = fd_;
    fd_ = -1;
    return fd;
  }
  void reset(int fd = -1);

 private:
  int fd_ = -1;
};

/// Blocking TCP stream with TCP_NODELAY set.
class TcpStream {
 public:
  TcpStream() = default;
  explicit TcpStream(Fd fd) : fd_(std::move(fd)) {}

  /// Single attempt; throws std::system_error (e.g. ECONNREFUSED).
  static TcpStream connect(const std::string& host, std::uint16_t port);

  /// Throws std::system_error on failure (EPIPE, ECONNRESET, ...).
  void send_all(std::span<const std::uint8_t> bytes);

  /// Fills `out` completely. Returns false on orderly EOF or a read timeout;
  /// throws std::system_error on other errors.
  bool recv_exact(std::span<std::uint8_t> out);

  void set_recv_timeout(std::chrono::milliseconds timeout);
  /// True when data (or EOF) is ready to read within `timeout`.
  bool wait_readable(std::chrono::milliseconds timeout);
  void shutdown();
  void close() { fd_.reset(); }
  bool is_open() const { return fd_.valid(); }

 private:
  Fd fd_;
};

class TcpListener {
 public:
  /// Binds and listens. Port 0 picks an ephemeral port; see port().
  static TcpListener bind(const std::string& host, std::uint16_t port);

  std::uint16_t port() const { return port_; }

  /// Waits up to `timeout` for a client.
  std::optional<TcpStream> accept(std::chrono::milliseconds timeout);

  void close() { fd_.reset(); }

 private:
  Fd fd_;
  std::uint16_t port_ = 0;
};

class UdpSocket {
 public:
  /// Unbound sender socket.
  static UdpSocket open();
  /// Receiver bound to host:port (port 0 = ephemeral).
  static UdpSocket bind(const std::string& host, std::uint16_t port);

  std::uint16_t port() const { return port_; }

  /// Returns 0 on success or the errno value of the failure.
  int send_to(const std::string& host, std::uint16_t port, std::span<const std::uint8_t> bytes);

  std::optional<std::vector<std::uint8_t>> recv(std::chrono::milliseconds timeout);

 private:
  Fd fd_;
  std::uint16_t port_ = 0;
};

}  // namespace tbridge::io
