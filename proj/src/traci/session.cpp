// SPDX-License-Identifier: Apache-2.0
#include "tbridge/traci/session.hpp"

#include <spdlog/spdlog.h>

#include <system_error>
#include <thread>

#include "tbridge/traci/constants.hpp"
#include "tbridge/traci/error.hpp"

namespace tbridge::traci {

namespace {

constexpr std::uint32_t kMaxIncomingMessage = 256u << 20;

bool is_get_domain(std::uint8_t id) { return id >= 0xA0 && id <= 0xAF; }

template <typename T>
T value_as(const TraciValue& v, std::string_view what) {
  if (const T* out = std::get_if<T>(&v)) return *out;
  throw TraciError(Errc::UnexpectedResponse, std::string("unexpected value type for ") + std::string(what));
}

}  // namespace

TraciSession TraciSession::connect(const std::string& host, std::uint16_t port, RetryPolicy policy) {
  std::string last_error = "no attempts made";
  for (int attempt = 0; attempt < std::max(1, policy.attempts); ++attempt) {
    try {
      TraciSession session(io::TcpStream::connect(host, port));
      TraciCommand version = make_get_version();
      auto replies = session.exchange({&version, 1});
      const Reply& r = replies.front();
      if (r.status.result == ResultCode::Ok) {
        if (!r.response) throw TraciError(Errc::HandshakeMismatch, "version status without payload");
        session.version_ = parse_version_response(*r.response);
        if (session.version_->api_version < ids::kMinApiVersion) {
          throw TraciError(Errc::HandshakeMismatch, "server API version " + std::to_string(session.version_->api_version) +
                                                        " < " + std::to_string(ids::kMinApiVersion));
        }
        spdlog::info("traci: connected to {}:{} ({}; API {})", host, port, session.version_->server,
                     session.version_->api_version);
      } else if (r.status.result == ResultCode::NotImplemented) {
        spdlog::info("traci: connected to {}:{} (server has no version command)", host, port);
      } else {
        throw TraciError(Errc::HandshakeMismatch, r.status.description);
      }
      return session;
    } catch (const std::system_error& e) {
      last_error = e.what();
    }
    std::this_thread::sleep_for(policy.delay);
  }
  throw TraciError(Errc::ConnectionRefused, host + ":" + std::to_string(port) + " after " +
                                                std::to_string(policy.attempts) + " attempts: " + last_error);
}

std::vector<TraciSession::Reply> TraciSession::exchange(std::span<const TraciCommand> commands) {
  if (!stream_.is_open()) throw TraciError(Errc::ConnectionLost, "session closed");
  TraciMessage request{{commands.begin(), commands.end()}};
  auto bytes = encode_message(request);

  std::vector<std::uint8_t> body;
  try {
    stream_.send_all(bytes);
    std::uint8_t header[4];
    if (!stream_.recv_exact(header)) throw TraciError(Errc::ConnectionLost, "server closed the connection");
    ByteReader hr(header);
    std::uint32_t total = hr.u32();
    if (total < 4 || total > kMaxIncomingMessage) {
      throw TraciError(Errc::MalformedCommand, "implausible message length " + std::to_string(total));
    }
    body.resize(total - 4);
    if (!stream_.recv_exact(body)) throw TraciError(Errc::ConnectionLost, "connection dropped mid-message");
  } catch (const std::system_error& e) {
    stream_.close();
    throw TraciError(Errc::ConnectionLost, e.what());
  } catch (const TraciError&) {
    stream_.close();
    throw;
  }

  // SUMO answers everything else first and runs (and acknowledges) a simstep
  // only after the rest of the message.
  std::vector<std::size_t> order;
  order.reserve(commands.size());
  for (std::size_t i = 0; i < commands.size(); ++i) {
    if (commands[i].command_id != ids::CMD_SIMSTEP) order.push_back(i);
  }
  for (std::size_t i = 0; i < commands.size(); ++i) {
    if (commands[i].command_id == ids::CMD_SIMSTEP) order.push_back(i);
  }

  ByteReader in(body);
  std::vector<Reply> replies(commands.size());
  for (std::size_t i : order) {
    const TraciCommand& cmd = commands[i];
    Reply& reply = replies[i];
    reply.status = decode_status(decode_command(in));
    if (reply.status.for_command != cmd.command_id) {
      throw TraciError(Errc::UnexpectedResponse, "status for command " + std::to_string(reply.status.for_command) +
                                                     ", expected " + std::to_string(cmd.command_id));
    }
    if (reply.status.result == ResultCode::Ok) {
      if (cmd.command_id == ids::CMD_SIMSTEP) {
        std::int32_t subscriptions = in.i32();
        for (std::int32_t k = 0; k < subscriptions; ++k) decode_command(in);  // none requested; skip
      } else if (is_get_domain(cmd.command_id) || cmd.command_id == ids::CMD_GETVERSION) {
        reply.response = decode_command(in);
      }
    }
  }
  if (!in.at_end()) throw TraciError(Errc::MalformedCommand, "trailing bytes after last reply");
  return replies;
}

StepResult TraciSession::step(double target_time) {
  // Two round trips: queries sharing a message with the simstep would be
  // answered before the step runs.
  const TraciCommand step_cmd = make_simstep(target_time);
  auto stepped = exchange({&step_cmd, 1});
  if (stepped[0].status.result != ResultCode::Ok) throw TraciError(Errc::ServerError, stepped[0].status.description);

  const TraciCommand cmds[] = {
      make_get(ids::CMD_GET_SIM_VARIABLE, ids::VAR_TIME, ""),
      make_get(ids::CMD_GET_SIM_VARIABLE, ids::VAR_DEPARTED_VEHICLES_IDS, ""),
      make_get(ids::CMD_GET_SIM_VARIABLE, ids::VAR_ARRIVED_VEHICLES_IDS, ""),
  };
  auto replies = exchange(cmds);
  for (const auto& r : replies) {
    if (r.status.result != ResultCode::Ok) throw TraciError(Errc::ServerError, r.status.description);
  }
  StepResult result;
  result.sim_time = value_as<double>(parse_get_response(*replies[0].response, ids::CMD_GET_SIM_VARIABLE).value, "time");
  result.departed_ids = value_as<std::vector<std::string>>(
      parse_get_response(*replies[1].response, ids::CMD_GET_SIM_VARIABLE).value, "departed ids");
  result.arrived_ids = value_as<std::vector<std::string>>(
      parse_get_response(*replies[2].response, ids::CMD_GET_SIM_VARIABLE).value, "arrived ids");
  sim_time_ = result.sim_time;
  return result;
}

TraciValue TraciSession::query(std::uint8_t domain, std::uint8_t variable, std::string_view object_id, Errc on_error) {
  TraciCommand cmd = make_get(domain, variable, object_id);
  auto replies = exchange({&cmd, 1});
  const Reply& r = replies.front();
  if (r.status.result != ResultCode::Ok) throw TraciError(on_error, r.status.description);
  if (!r.response) throw TraciError(Errc::UnexpectedResponse, "missing response");
  return parse_get_response(*r.response, domain).value;
}

VehicleState TraciSession::get_vehicle_state(std::string_view vehicle_id) {
  std::string id(vehicle_id);
  std::string error;
  auto cmds = vehicle_queries({&id, 1});
  auto replies = exchange(cmds);
  auto state = decode_vehicle(replies.data(), id, error);
  if (!state) throw TraciError(Errc::UnknownVehicle, error);
  return std::move(*state);
}

std::string TraciSession::get_traffic_light_state(std::string_view junction_id) {
  return value_as<std::string>(
      query(ids::CMD_GET_TL_VARIABLE, ids::TL_RED_YELLOW_GREEN_STATE, junction_id, Errc::UnknownJunction),
      "signal state");
}

std::vector<std::string> TraciSession::traffic_light_ids() {
  return value_as<std::vector<std::string>>(query(ids::CMD_GET_TL_VARIABLE, ids::ID_LIST, "", Errc::ServerError),
                                            "tl id list");
}

double TraciSession::step_length() {
  return value_as<double>(query(ids::CMD_GET_SIM_VARIABLE, ids::VAR_DELTA_T, "", Errc::ServerError), "delta t");
}

std::vector<TraciCommand> TraciSession::vehicle_queries(std::span<const std::string> ids_in) {
  std::vector<TraciCommand> cmds;
  cmds.reserve(ids_in.size() * kVehicleVars.size());
  for (const auto& id : ids_in) {
    for (auto var : kVehicleVars) cmds.push_back(make_get(ids::CMD_GET_VEHICLE_VARIABLE, var, id));
  }
  return cmds;
}

std::optional<VehicleState> TraciSession::decode_vehicle(const Reply* r, const std::string& id, std::string& error) const {
  for (std::size_t k = 0; k < kVehicleVars.size(); ++k) {
    if (r[k].status.result != ResultCode::Ok) {
      error = r[k].status.description;
      return std::nullopt;
    }
  }
  auto get = [&](std::size_t k) { return parse_get_response(*r[k].response, ids::CMD_GET_VEHICLE_VARIABLE).value; };
  VehicleState s;
  s.id = id;
  auto pos = value_as<Position2D>(get(0), "position");
  s.position = {pos.x, pos.y};
  s.angle = value_as<double>(get(1), "angle");
  s.speed = value_as<double>(get(2), "speed");
  s.acceleration = value_as<double>(get(3), "acceleration");
  s.vtype = value_as<std::string>(get(4), "type");
  s.sim_time = sim_time_;
  return s;
}

std::vector<VehicleState> TraciSession::vehicle_states(std::span<const std::string> ids_in) {
  std::vector<VehicleState> out;
  if (ids_in.empty()) return out;
  auto replies = exchange(vehicle_queries(ids_in));
  out.reserve(ids_in.size());
  std::string error;
  for (std::size_t i = 0; i < ids_in.size(); ++i) {
    auto state = decode_vehicle(&replies[i * kVehicleVars.size()], ids_in[i], error);
    if (state) {
      out.push_back(std::move(*state));
    } else {
      spdlog::warn("traci: skipping vehicle '{}' this step: {}", ids_in[i], error);
    }
  }
  return out;
}

std::vector<LightState> TraciSession::light_states(std::span<const std::string> junction_ids) {
  std::vector<LightState> out;
  if (junction_ids.empty()) return out;
  std::vector<TraciCommand> cmds;
  cmds.reserve(junction_ids.size());
  for (const auto& id : junction_ids) cmds.push_back(make_get(ids::CMD_GET_TL_VARIABLE, ids::TL_RED_YELLOW_GREEN_STATE, id));
  auto replies = exchange(cmds);
  for (std::size_t i = 0; i < junction_ids.size(); ++i) {
    if (replies[i].status.result != ResultCode::Ok) {
      spdlog::warn("traci: no signal state for junction '{}': {}", junction_ids[i], replies[i].status.description);
      continue;
    }
    auto v = parse_get_response(*replies[i].response, ids::CMD_GET_TL_VARIABLE).value;
    out.emplace_back(junction_ids[i], value_as<std::string>(v, "signal state"));
  }
  return out;
}

void TraciSession::close() {
  if (!stream_.is_open()) return;
  try {
    TraciCommand cmd = make_close();
    exchange({&cmd, 1});
  } catch (const TraciError& e) {
    spdlog::debug("traci: close: {}", e.what());
  }
  stream_.close();
}

}  // namespace tbridge::traci
