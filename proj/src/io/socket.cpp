// SPDX-License-Identifier: Apache-2.0
#include "tbridge/io/socket.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <system_error>

namespace tbridge::io {
namespace {

[[noreturn]] void throw_errno(const char* what) {
  throw std::system_error(errno, std::generic_category(), what);
}

sockaddr_in resolve_ipv4(const std::string& host, std::uint16_t port) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  std::string name = host.empty() ? "0.0.0.0" : host;
  if (name == "localhost") name = "127.0.0.1";
  if (::inet_pton(AF_INET, name.c_str(), &addr.sin_addr) == 1) return addr;

  addrinfo hints{};
  hints.ai_family = AF_INET;
  addrinfo* res = nullptr;
  int rc = ::getaddrinfo(name.c_str(), nullptr, &hints, &res);
  if (rc != 0 || res == nullptr) {
    throw std::system_error(EHOSTUNREACH, std::generic_category(), "resolve " + name + ": " + ::gai_strerror(rc));
  }
  addr.sin_addr = reinterpret_cast<sockaddr_in*>(res->ai_addr)->sin_addr;
  ::freeaddrinfo(res);
  return addr;
}

std::uint16_t bound_port(int fd) {
  sockaddr_in addr{};
  socklen_t len = sizeof(addr);
  if (::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len) != 0) throw_errno("getsockname");
  return ntohs(addr.sin_port);
}

bool wait_readable(int fd, std::chrono::milliseconds timeout) {
  pollfd pfd{fd, POLLIN, 0};
  int rc;
  do {
    rc = ::poll(&pfd, 1, static_cast<int>(timeout.count()));
  } while (rc < 0 && errno == EINTR);
  if (rc < 0) throw_errno("poll");
  return rc > 0;
}

}  // namespace

Fd& Fd::operator=(Fd&& other) noexcept {
  if (this != &other) reset(other.release());
  return *this;
}

void Fd::reset(int fd) {
  if (fd_ >= 0) ::close(fd_);
  fd_ = fd;
}

TcpStream TcpStream::connect(const std::string& host, std::uint16_t port) {
  sockaddr_in addr = resolve_ipv4(host, port);
  Fd fd(::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC, 0));
  if (!fd.valid()) throw_errno("socket");
  if (::connect(fd.get(), reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) throw_errno("connect");
  int one = 1;
  ::setsockopt(fd.get(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  return TcpStream(std::move(fd));
}

void TcpStream::send_all(std::span<const std::uint8_t> bytes) {
  if (!fd_.valid()) throw std::system_error(ENOTCONN, std::generic_category(), "send on closed stream");
  std::size_t sent = 0;
  while (sent < bytes.size()) {
    ssize_t n = ::send(fd_.get(), bytes.data() + sent, bytes.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw_errno("send");
    }
    sent += static_cast<std::size_t>(n);
  }
}

bool TcpStream::wait_readable(std::chrono::milliseconds timeout) {
  return fd_.valid() && tbridge::io::wait_readable(fd_.get(), timeout);
}

bool TcpStream::recv_exact(std::span<std::uint8_t> out) {
  if (!fd_.valid()) throw std::system_error(ENOTCONN, std::generic_category(), "recv on closed stream");
  std::size_t got = 0;
  while (got < out.size()) {
    ssize_t n = ::recv(fd_.get(), out.data() + got, out.size() - got, 0);
    if (n == 0) return false;
    if (n < 0) {
      if (errno == EINTR) continue;
      if (errno == EAGAIN || errno == EWOULDBLOCK) return false;
      throw_errno("recv");
    }
    got += static_cast<std::size_t>(n);
  }
  return true;
}

void TcpStream::set_recv_timeout(std::chrono::milliseconds timeout) {
  timeval tv{};
  tv.tv_sec = static_cast<time_t>(timeout.count() / 1000);
  tv.tv_usec = static_cast<suseconds_t>((timeout.count() % 1000) * 1000);
  ::setsockopt(fd_.get(), SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
}

void TcpStream::shutdown() {
  if (fd_.valid()) ::shutdown(fd_.get(), SHUT_RDWR);
}

TcpListener TcpListener::bind(const std::string& host, std::uint16_t port) {
  sockaddr_in addr = resolve_ipv4(host, port);
  TcpListener listener;
  listener.fd_ = Fd(::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC, 0));
  if (!listener.fd_.valid()) throw_errno("socket");
  int one = 1;
  ::setsockopt(listener.fd_.get(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  if (::bind(listener.fd_.get(), reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) throw_errno("bind");
  if (::listen(listener.fd_.get(), 4) != 0) throw_errno("listen");
  listener.port_ = bound_port(listener.fd_.get());
  return listener;
}

std::optional<TcpStream> TcpListener::accept(std::chrono::milliseconds timeout) {
  if (!fd_.valid() || !wait_readable(fd_.get(), timeout)) return std::nullopt;
  Fd client(::accept4(fd_.get(), nullptr, nullptr, SOCK_CLOEXEC));
  if (!client.valid()) return std::nullopt;
  int one = 1;
  ::setsockopt(client.get(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  return TcpStream(std::move(client));
}

UdpSocket UdpSocket::open() {
  UdpSocket s;
  s.fd_ = Fd(::socket(AF_INET, SOCK_DGRAM | SOCK_CLOEXEC, 0));
  if (!s.fd_.valid()) throw_errno("socket");
  return s;
}

UdpSocket UdpSocket::bind(const std::string& host, std::uint16_t port) {
  UdpSocket s = open();
  sockaddr_in addr = resolve_ipv4(host, port);
  int size = 1 << 22;
  ::setsockopt(s.fd_.get(), SOL_SOCKET, SO_RCVBUF, &size, sizeof(size));
  if (::bind(s.fd_.get(), reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) throw_errno("bind");
  s.port_ = bound_port(s.fd_.get());
  return s;
}

int UdpSocket::send_to(const std::string& host, std::uint16_t port, std::span<const std::uint8_t> bytes) {
  sockaddr_in addr{};
  try {
    addr = resolve_ipv4(host, port);
  } catch (const std::system_error& e) {
    return e.code().value();
  }
  ssize_t n = ::sendto(fd_.get(), bytes.data(), bytes.size(), 0, reinterpret_cast<sockaddr*>(&addr), sizeof(addr));
  return n < 0 ? errno : 0;
}

std::optional<std::vector<std::uint8_t>> UdpSocket::recv(std::chrono::milliseconds timeout) {
  if (!wait_readable(fd_.get(), timeout)) return std::nullopt;
  std::vector<std::uint8_t> buf(65536);
  ssize_t n = ::recv(fd_.get(), buf.data(), buf.size(), 0);
  if (n < 0) return std::nullopt;
  buf.resize(static_cast<std::size_t>(n));
  return buf;
}

}  // namespace tbridge::io
