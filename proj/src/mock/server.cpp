// SPDX-License-Identifier: Apache-2.0
#include "tbridge/mock/server.hpp"

#include <spdlog/spdlog.h>

#include <cstdio>

#include "tbridge/traci/constants.hpp"
#include "tbridge/traci/error.hpp"
#include "tbridge/traci/message.hpp"
#include "tbridge/traci/protocol.hpp"
#include "tbridge/traci/storage.hpp"

namespace tbridge::mock {

namespace tr = tbridge::traci;
namespace ids = tbridge::traci::ids;

namespace {

constexpr std::uint32_t kMaxRequest = 16u << 20;

std::string hex(std::uint8_t v) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "0x%02x", v);
  return buf;
}

struct Outcome {
  tr::StatusResponse status;
  std::optional<tr::TraciCommand> response;
  bool simstep = false;
};

Outcome ok(std::uint8_t cmd) { return {{cmd, tr::ResultCode::Ok, ""}, std::nullopt, false}; }
Outcome err(std::uint8_t cmd, std::string what) { return {{cmd, tr::ResultCode::Err, std::move(what)}, std::nullopt, false}; }

Outcome value(std::uint8_t domain, std::uint8_t var, const std::string& object, tr::TraciValue v) {
  Outcome o = ok(domain);
  o.response = tr::make_get_response(domain, {var, object, std::move(v)});
  return o;
}

}  // namespace

MockSession::Reply MockSession::handle(std::span<const std::uint8_t> message) {
  std::vector<Outcome> outcomes;
  std::vector<double> deferred_steps;  // like SUMO: steps run after the rest of the message
  bool close = false;
  try {
    const tr::TraciMessage request = tr::decode_message(message);
    for (const auto& cmd : request.commands) {
      const std::uint8_t id = cmd.command_id;
      try {
        switch (id) {
          case ids::CMD_GETVERSION: {
            Outcome o = ok(id);
            o.response = tr::make_version_response({ids::kApiVersion, kMockServerName});
            outcomes.push_back(std::move(o));
            break;
          }
          case ids::CMD_SIMSTEP:
            deferred_steps.push_back(tr::parse_simstep(cmd));
            break;
          case ids::CMD_CLOSE:
            outcomes.push_back(ok(id));
            close = true;
            break;
          case ids::CMD_GET_SIM_VARIABLE: {
            const auto req = tr::parse_get(cmd);
            switch (req.variable) {
              case ids::VAR_TIME: outcomes.push_back(value(id, req.variable, req.object_id, sim_.time())); break;
              case ids::VAR_DELTA_T: outcomes.push_back(value(id, req.variable, req.object_id, sim_.step_length())); break;
              case ids::VAR_DEPARTED_VEHICLES_IDS:
                outcomes.push_back(value(id, req.variable, req.object_id, last_step_.departed_ids));
                break;
              case ids::VAR_ARRIVED_VEHICLES_IDS:
                outcomes.push_back(value(id, req.variable, req.object_id, last_step_.arrived_ids));
                break;
              default: outcomes.push_back(err(id, "Get Simulation Variable: unsupported variable " + hex(req.variable)));
            }
            break;
          }
          case ids::CMD_GET_VEHICLE_VARIABLE: {
            const auto req = tr::parse_get(cmd);
            if (req.variable == ids::ID_LIST) {
              outcomes.push_back(value(id, req.variable, req.object_id, sim_.active_ids()));
              break;
            }
            const auto v = sim_.vehicle(req.object_id);
            if (!v) {
              outcomes.push_back(err(id, "Vehicle '" + req.object_id + "' is not known."));
              break;
            }
            switch (req.variable) {
              case ids::VAR_POSITION:
                outcomes.push_back(value(id, req.variable, req.object_id, tr::Position2D{v->position.x, v->position.y}));
                break;
              case ids::VAR_ANGLE: outcomes.push_back(value(id, req.variable, req.object_id, v->angle)); break;
              case ids::VAR_SPEED: outcomes.push_back(value(id, req.variable, req.object_id, v->speed)); break;
              case ids::VAR_ACCELERATION: outcomes.push_back(value(id, req.variable, req.object_id, v->acceleration)); break;
              case ids::VAR_TYPE: outcomes.push_back(value(id, req.variable, req.object_id, v->vtype)); break;
              default: outcomes.push_back(err(id, "Get Vehicle Variable: unsupported variable " + hex(req.variable)));
            }
            break;
          }
          case ids::CMD_GET_TL_VARIABLE: {
            const auto req = tr::parse_get(cmd);
            if (req.variable == ids::ID_LIST) {
              outcomes.push_back(value(id, req.variable, req.object_id, sim_.light_ids()));
              break;
            }
            if (req.variable != ids::TL_RED_YELLOW_GREEN_STATE) {
              outcomes.push_back(err(id, "Get TLS Variable: unsupported variable " + hex(req.variable)));
              break;
            }
            const auto state = sim_.light_state(req.object_id);
            if (!state) {
              outcomes.push_back(err(id, "Traffic light '" + req.object_id + "' is not known"));
              break;
            }
            outcomes.push_back(value(id, req.variable, req.object_id, *state));
            break;
          }
          default:
            outcomes.push_back({{id, tr::ResultCode::NotImplemented, "command " + hex(id) + " not implemented"}, std::nullopt, false});
        }
      } catch (const tr::TraciError& e) {
        outcomes.push_back(err(id, std::string("malformed command: ") + e.what()));
      }
      if (close) break;
    }
    for (double target : deferred_steps) {
      last_step_ = sim_.step_to(target);
      Outcome o = ok(ids::CMD_SIMSTEP);
      o.simstep = true;
      outcomes.push_back(std::move(o));
    }
  } catch (const tr::TraciError& e) {
    outcomes.clear();
    deferred_steps.clear();
    const std::uint8_t id = message.size() > 5 ? message[5] : 0;  // first command id if the header survived
    outcomes.push_back(err(id, std::string("malformed message: ") + e.what()));
  }

  tr::ByteWriter body;
  for (const auto& o : outcomes) {
    tr::encode_command(tr::encode_status(o.status), body);
    if (o.simstep) body.i32(0);  // no subscriptions
    if (o.response) tr::encode_command(*o.response, body);
  }
  tr::ByteWriter out;
  out.u32(static_cast<std::uint32_t>(4 + body.size()));
  out.bytes(body.data());
  return {out.take(), close};
}

MockServer::MockServer(Scenario scenario, MockServerOptions options)
    : scenario_(std::move(scenario)), options_(std::move(options)) {
  scenario_.validate();
  listener_ = io::TcpListener::bind(options_.host, options_.port);
}

MockServer::~MockServer() { stop(); }

void MockServer::start() {
  if (thread_.joinable()) return;
  thread_ = std::jthread([this](std::stop_token token) { serve(token); });
}

void MockServer::stop() {
  if (!thread_.joinable()) return;
  thread_.request_stop();
  thread_.join();
}

void MockServer::serve(std::stop_token token) {
  using namespace std::chrono_literals;
  while (!token.stop_requested()) {
    auto client = listener_.accept(50ms);
    if (!client) continue;
    ++clients_;
    try {
      serve_client(*client, token);
    } catch (const std::exception& e) {
      spdlog::warn("mock server: client dropped: {}", e.what());
    }
  }
}

void MockServer::serve_client(io::TcpStream& client, const std::stop_token& token) {
  using namespace std::chrono_literals;
  MockSession session(scenario_);
  std::size_t received = 0;
  while (!token.stop_requested()) {
    if (!client.wait_readable(50ms)) continue;
    std::uint8_t header[4];
    if (!client.recv_exact(header)) return;
    const std::uint32_t total = std::uint32_t{header[0]} << 24 | std::uint32_t{header[1]} << 16 |
                                std::uint32_t{header[2]} << 8 | header[3];
    if (total < 4 || total > kMaxRequest) {
      spdlog::warn("mock server: unframeable message length {}, closing", total);
      return;
    }
    std::vector<std::uint8_t> message(total);
    std::copy(std::begin(header), std::end(header), message.begin());
    if (!client.recv_exact(std::span(message).subspan(4))) return;
    ++messages_;
    if (options_.close_after_messages && ++received >= *options_.close_after_messages) return;

    auto reply = session.handle(message);
    client.send_all(reply.bytes);
    if (reply.close) return;
  }
}

std::vector<VehicleState> MockSource::vehicle_states(std::span<const std::string> ids) {
  std::vector<VehicleState> out;
  out.reserve(ids.size());
  for (const auto& id : ids) {
    if (auto v = sim_.vehicle(id)) out.push_back(std::move(*v));
  }
  return out;
}

std::vector<LightState> MockSource::light_states(std::span<const std::string> junction_ids) {
  std::vector<LightState> out;
  for (const auto& j : junction_ids) {
    if (auto s = sim_.light_state(j)) out.emplace_back(j, std::move(*s));
  }
  return out;
}

}  // namespace tbridge::mock
