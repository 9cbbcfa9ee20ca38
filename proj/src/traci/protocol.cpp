// SPDX-License-Identifier: Apache-2.0
#include "tbridge/traci/protocol.hpp"

#include "tbridge/traci/constants.hpp"
#include "tbridge/traci/error.hpp"

namespace tbridge::traci {

namespace {

void expect_consumed(const ByteReader& in, const char* what) {
  if (!in.at_end()) throw TraciError(Errc::MalformedCommand, std::string("trailing bytes in ") + what);
}

template <typename Fn>
auto malformed_on_truncation(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const TraciError& e) {
    if (e.code() != Errc::Truncated) throw;
    throw TraciError(Errc::MalformedCommand, std::string(what) + ": " + e.what());
  }
}

}  // namespace

TraciCommand make_get_version() { return {ids::CMD_GETVERSION, {}}; }

TraciCommand make_simstep(double target_time) {
  ByteWriter w;
  w.f64(target_time);
  return {ids::CMD_SIMSTEP, w.take()};
}

TraciCommand make_close() { return {ids::CMD_CLOSE, {}}; }

TraciCommand make_get(std::uint8_t domain, std::uint8_t variable, std::string_view object_id) {
  ByteWriter w;
  w.u8(variable);
  w.string(object_id);
  return {domain, w.take()};
}

GetRequest parse_get(const TraciCommand& cmd) {
  return malformed_on_truncation("get request", [&] {
    ByteReader in(cmd.payload);
    GetRequest req;
    req.domain = cmd.command_id;
    req.variable = in.u8();
    req.object_id = in.string();
    expect_consumed(in, "get request");
    return req;
  });
}

double parse_simstep(const TraciCommand& cmd) {
  return malformed_on_truncation("simstep", [&] {
    ByteReader in(cmd.payload);
    double t = in.f64();
    expect_consumed(in, "simstep");
    return t;
  });
}

TraciCommand make_get_response(std::uint8_t domain, const GetResponse& response) {
  ByteWriter w;
  w.u8(response.variable);
  w.string(response.object_id);
  encode_value(response.value, w);
  return {response_id(domain), w.take()};
}

GetResponse parse_get_response(const TraciCommand& cmd, std::uint8_t domain) {
  if (cmd.command_id != response_id(domain)) {
    throw TraciError(Errc::UnexpectedResponse, "response id " + std::to_string(cmd.command_id) + " for domain " +
                                                   std::to_string(domain));
  }
  return malformed_on_truncation("get response", [&] {
    ByteReader in(cmd.payload);
    GetResponse r;
    r.variable = in.u8();
    r.object_id = in.string();
    r.value = decode_value(in);
    expect_consumed(in, "get response");
    return r;
  });
}

TraciCommand make_version_response(const VersionInfo& info) {
  ByteWriter w;
  w.i32(info.api_version);
  w.string(info.server);
  return {ids::CMD_GETVERSION, w.take()};
}

VersionInfo parse_version_response(const TraciCommand& cmd) {
  if (cmd.command_id != ids::CMD_GETVERSION) throw TraciError(Errc::HandshakeMismatch, "not a version response");
  return malformed_on_truncation("version response", [&] {
    ByteReader in(cmd.payload);
    VersionInfo v;
    v.api_version = in.i32();
    v.server = in.string();
    expect_consumed(in, "version response");
    return v;
  });
}

}  // namespace tbridge::traci
