// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "tbridge/traci/message.hpp"

// Builders and parsers for the concrete commands of the supported subset.
// Shared by the client session and the mock server.
namespace tbridge::traci {

TraciCommand make_get_version();
TraciCommand make_simstep(double target_time);
TraciCommand make_close();

/// Variable query: `[var][object id string]`.
TraciCommand make_get(std::uint8_t domain, std::uint8_t variable, std::string_view object_id);

struct GetRequest {
  std::uint8_t domain = 0;
  std::uint8_t variable = 0;
  std::string object_id;
};
GetRequest parse_get(const TraciCommand& cmd);

double parse_simstep(const TraciCommand& cmd);

/// Response payload: `[var][object id][typed value]`, command id is the
/// domain's response id (request id + 0x10).
struct GetResponse {
  std::uint8_t variable = 0;
  std::string object_id;
  TraciValue value;
};
TraciCommand make_get_response(std::uint8_t domain, const GetResponse& response);
GetResponse parse_get_response(const TraciCommand& cmd, std::uint8_t domain);

inline constexpr std::uint8_t response_id(std::uint8_t domain) { return static_cast<std::uint8_t>(domain + 0x10); }

struct VersionInfo {
  std::int32_t api_version = 0;
  std::string server;
};
TraciCommand make_version_response(const VersionInfo& info);
VersionInfo parse_version_response(const TraciCommand& cmd);

}  // namespace tbridge::traci
