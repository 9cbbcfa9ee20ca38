// SPDX-License-Identifier: Apache-2.0
#include "tbridge/app/scene_server.hpp"

#include <spdlog/spdlog.h>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <deque>
#include <future>
#include <set>
#include <thread>

namespace tbridge::app {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

namespace {
class Session;
}

struct SceneServer::Impl {
  asio::io_context ioc{1};
  tcp::acceptor acceptor{ioc};
  SceneServerOptions options;
  ListenerCell& listener;
  std::set<std::shared_ptr<Session>> sessions;  // I/O thread only
  std::uint64_t next_id = 1;
  std::atomic<std::size_t> clients{0};
  std::uint16_t port = 0;

  mutable std::mutex stats_mu;
  SceneServerStats stats;

  std::atomic<bool> stopped{false};
  std::thread thread;

  Impl(SceneServerOptions opts, ListenerCell& cell) : options(std::move(opts)), listener(cell) {}

  template <typename F>
  void count(F&& f) {
    std::lock_guard lock(stats_mu);
    f(stats);
  }

  void accept();
  void add(const std::shared_ptr<Session>& s);
  void remove(const std::shared_ptr<Session>& s);
};

namespace {

class Session : public std::enable_shared_from_this<Session> {
 public:
  Session(tcp::socket socket, SceneServer::Impl& server, std::uint64_t id)
      : ws_(std::move(socket)), server_(server), id_(id) {}

  void start() {
    http::async_read(ws_.next_layer(), buffer_, request_,
                     [self = shared_from_this()](beast::error_code ec, std::size_t) { self->on_request(ec); });
  }

  void send(const std::shared_ptr<const std::string>& text) {
    if (closing_) return;
    if (queue_.size() >= server_.options.queue_depth) {
      spdlog::warn("scene: client {} is {} messages behind, dropping it", id_, queue_.size());
      server_.count([](auto& s) { ++s.dropped_slow; });
      close();
      return;
    }
    queue_.push_back(text);
    if (queue_.size() == 1) write_next();
  }

  void close() {
    if (closing_) return;
    closing_ = true;
    beast::error_code ec;
    beast::get_lowest_layer(ws_).socket().shutdown(tcp::socket::shutdown_both, ec);
    beast::get_lowest_layer(ws_).close();
    finish();
  }

 private:
  void on_request(beast::error_code ec) {
    if (ec) return finish();
    if (!websocket::is_upgrade(request_) || request_.target() != server_.options.path) {
      server_.count([](auto& s) { ++s.rejected_upgrades; });
      response_ = {http::status::not_found, request_.version()};
      response_.set(http::field::content_type, "text/plain");
      response_.body() = "WebSocket endpoint is " + server_.options.path + "\n";
      response_.keep_alive(false);
      response_.prepare_payload();
      http::async_write(ws_.next_layer(), response_, [self = shared_from_this()](beast::error_code, std::size_t) {
        self->close();
      });
      return;
    }
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(request_, [self = shared_from_this()](beast::error_code ec2) { self->on_accept(ec2); });
  }

  void on_accept(beast::error_code ec) {
    if (ec) return finish();
    server_.add(shared_from_this());
    read_next();
  }

  void read_next() {
    ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) { self->on_read(ec); });
  }

  void on_read(beast::error_code ec) {
    if (ec) return finish();
    std::string text = beast::buffers_to_string(buffer_.data());
    buffer_.consume(buffer_.size());
    std::string why;
    if (auto update = parse_listener(text, &why)) {
      update->client = id_;
      server_.listener.set(*update);
      server_.count([](auto& s) { ++s.listener_updates; });
    } else {
      server_.count([](auto& s) { ++s.bad_messages; });
      spdlog::debug("scene: client {} sent an unusable message: {}", id_, why);
    }
    read_next();
  }

  void write_next() {
    ws_.text(true);
    ws_.async_write(asio::buffer(*queue_.front()), [self = shared_from_this()](beast::error_code ec, std::size_t) {
      self->on_write(ec);
    });
  }

  void on_write(beast::error_code ec) {
    if (ec) return finish();
    queue_.pop_front();
    server_.count([](auto& s) { ++s.messages_sent; });
    if (!queue_.empty() && !closing_) write_next();
  }

  void finish() {
    closing_ = true;
    server_.remove(shared_from_this());
  }

  websocket::stream<beast::tcp_stream> ws_;
  SceneServer::Impl& server_;
  std::uint64_t id_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> request_;
  http::response<http::string_body> response_;
  std::deque<std::shared_ptr<const std::string>> queue_;
  bool closing_ = false;
};

}  // namespace

void SceneServer::Impl::accept() {
  acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
    if (ec) {
      if (ec != asio::error::operation_aborted) spdlog::warn("scene: accept failed: {}", ec.message());
    } else {
      std::make_shared<Session>(std::move(socket), *this, next_id++)->start();
    }
    if (acceptor.is_open()) accept();
  });
}

void SceneServer::Impl::add(const std::shared_ptr<Session>& s) {
  sessions.insert(s);
  clients = sessions.size();
  count([](auto& st) { ++st.accepted; });
  spdlog::info("scene: client connected ({} total)", sessions.size());
}

void SceneServer::Impl::remove(const std::shared_ptr<Session>& s) {
  if (sessions.erase(s) != 0) {
    clients = sessions.size();
    spdlog::info("scene: client disconnected ({} left)", sessions.size());
  }
}

SceneServer::SceneServer(SceneServerOptions options, ListenerCell& listener)
    : impl_(std::make_unique<Impl>(std::move(options), listener)) {
  auto& im = *impl_;
  tcp::endpoint ep(asio::ip::make_address(im.options.host), im.options.port);
  im.acceptor.open(ep.protocol());
  im.acceptor.set_option(asio::socket_base::reuse_address(true));
  im.acceptor.bind(ep);
  im.acceptor.listen();
  im.port = im.acceptor.local_endpoint().port();
  im.accept();
  im.thread = std::thread([&im] {
    try {
      im.ioc.run();
    } catch (const std::exception& e) {
      spdlog::error("scene: I/O thread failed: {}", e.what());
    }
  });
  spdlog::info("scene: serving ws://{}:{}{}", im.options.host, im.port, im.options.path);
}

SceneServer::~SceneServer() { stop(); }

std::uint16_t SceneServer::port() const { return impl_->port; }

std::size_t SceneServer::client_count() const { return impl_->clients; }

SceneServerStats SceneServer::stats() const {
  std::lock_guard lock(impl_->stats_mu);
  return impl_->stats;
}

void SceneServer::broadcast(std::string text) {
  if (impl_->stopped) return;
  auto shared = std::make_shared<const std::string>(std::move(text));
  asio::post(impl_->ioc, [im = impl_.get(), shared] {
    // copy: send() may remove the session from the set
    auto sessions = im->sessions;
    for (const auto& s : sessions) s->send(shared);
  });
}

void SceneServer::stop() {
  auto& im = *impl_;
  if (im.stopped.exchange(true)) return;
  std::promise<void> closed;
  asio::post(im.ioc, [&im, &closed] {
    beast::error_code ec;
    im.acceptor.close(ec);
    auto sessions = im.sessions;
    for (const auto& s : sessions) s->close();
    closed.set_value();
  });
  // connections still in the HTTP handshake are not in the set; stop() abandons them
  if (im.thread.joinable()) closed.get_future().wait_for(std::chrono::seconds(2));
  im.ioc.stop();
  if (im.thread.joinable()) im.thread.join();
  im.sessions.clear();
  im.clients = 0;
}

}  // namespace tbridge::app
