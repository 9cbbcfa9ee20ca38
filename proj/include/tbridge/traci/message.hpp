// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tbridge/traci/storage.hpp"

namespace tbridge::traci {

/// One TraCI command: `[len][id][payload]`, or `[0][len:u32][id][payload]`
/// once the total exceeds 255 bytes.
struct TraciCommand {
  std::uint8_t command_id = 0;
  std::vector<std::uint8_t> payload;

  friend bool operator==(const TraciCommand&, const TraciCommand&) = default;
};

/// A framed message: 4-byte big-endian total length (including itself)
/// followed by the encoded commands.
struct TraciMessage {
  std::vector<TraciCommand> commands;

  friend bool operator==(const TraciMessage&, const TraciMessage&) = default;
};

inline constexpr std::size_t kMaxShortCommand = 255;

std::size_t encoded_size(const TraciCommand& cmd);
void encode_command(const TraciCommand& cmd, ByteWriter& out);

/// Reads one command. Throws MalformedCommand when its declared length is
/// impossible or overruns the reader.
TraciCommand decode_command(ByteReader& in);

std::vector<std::uint8_t> encode_message(const TraciMessage& msg);

/// Inverse of encode_message. Throws Truncated when fewer bytes are present
/// than the header declares (or fewer than 4), MalformedCommand when the
/// commands do not tile the declared length exactly.
TraciMessage decode_message(std::span<const std::uint8_t> bytes);

enum class ResultCode : std::uint8_t { Ok = 0x00, NotImplemented = 0x01, Err = 0xFF };

struct StatusResponse {
  std::uint8_t for_command = 0;
  ResultCode result = ResultCode::Ok;
  std::string description;

  friend bool operator==(const StatusResponse&, const StatusResponse&) = default;
};

TraciCommand encode_status(const StatusResponse& status);

/// Interprets `cmd` as a status response. Err/NotImplemented statuses with an
/// empty description get a placeholder so the description is never empty.
StatusResponse decode_status(const TraciCommand& cmd);

struct Position2D {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Position2D&, const Position2D&) = default;
};

struct Color {
  std::uint8_t r = 0, g = 0, b = 0, a = 255;
  friend bool operator==(const Color&, const Color&) = default;
};

using TraciValue = std::variant<double, std::int32_t, std::string, std::vector<std::string>, Position2D, Color>;

/// Writes the 1-byte type tag followed by the big-endian payload.
void encode_value(const TraciValue& value, ByteWriter& out);
TraciValue decode_value(ByteReader& in);

std::uint8_t type_tag(const TraciValue& value);

}  // namespace tbridge::traci
