// SPDX-License-Identifier: Apache-2.0
#include "tbridge/traci/message.hpp"

#include <limits>

#include "tbridge/traci/constants.hpp"
#include "tbridge/traci/error.hpp"

namespace tbridge::traci {

namespace {
constexpr std::size_t kMaxExtended = std::numeric_limits<std::uint32_t>::max();

std::string hex_byte(std::uint8_t v) {
  constexpr char digits[] = "0123456789abcdef";
  return {'0', 'x', digits[v >> 4], digits[v & 0xF]};
}
}  // namespace

std::size_t encoded_size(const TraciCommand& cmd) {
  std::size_t short_len = 1 + 1 + cmd.payload.size();
  return short_len <= kMaxShortCommand ? short_len : 1 + 4 + 1 + cmd.payload.size();
}

void encode_command(const TraciCommand& cmd, ByteWriter& out) {
  std::size_t total = encoded_size(cmd);
  if (total > kMaxExtended) throw TraciError(Errc::CommandTooLarge, std::to_string(total) + " bytes");
  if (total <= kMaxShortCommand) {
    out.u8(static_cast<std::uint8_t>(total));
  } else {
    out.u8(0);
    out.u32(static_cast<std::uint32_t>(total));
  }
  out.u8(cmd.command_id);
  out.bytes(cmd.payload);
}

TraciCommand decode_command(ByteReader& in) {
  const std::size_t start = in.position();
  const std::size_t available = in.remaining();
  std::size_t total = 0;
  std::size_t header = 0;
  try {
    std::uint8_t short_len = in.u8();
    if (short_len != 0) {
      total = short_len;
      header = 1;
    } else {
      total = in.u32();
      header = 5;
    }
  } catch (const TraciError&) {
    throw TraciError(Errc::MalformedCommand, "command header cut off at offset " + std::to_string(start));
  }
  if (total < header + 1) {
    throw TraciError(Errc::MalformedCommand, "command length " + std::to_string(total) + " too small");
  }
  if (total > available) {
    throw TraciError(Errc::MalformedCommand, "command length " + std::to_string(total) + " exceeds remaining " +
                                                 std::to_string(available));
  }
  TraciCommand cmd;
  cmd.command_id = in.u8();
  auto payload = in.bytes(total - header - 1);
  cmd.payload.assign(payload.begin(), payload.end());
  return cmd;
}

std::vector<std::uint8_t> encode_message(const TraciMessage& msg) {
  std::size_t total = 4;
  for (const auto& cmd : msg.commands) total += encoded_size(cmd);
  if (total > kMaxExtended) throw TraciError(Errc::CommandTooLarge, "message of " + std::to_string(total) + " bytes");
  ByteWriter out;
  out.u32(static_cast<std::uint32_t>(total));
  for (const auto& cmd : msg.commands) encode_command(cmd, out);
  return out.take();
}

TraciMessage decode_message(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) throw TraciError(Errc::Truncated, "message shorter than its length prefix");
  ByteReader head(bytes.first(4));
  std::uint32_t total = head.u32();
  if (total < 4) throw TraciError(Errc::Truncated, "declared length " + std::to_string(total) + " below minimum 4");
  if (total > bytes.size()) {
    throw TraciError(Errc::Truncated,
                     "declared length " + std::to_string(total) + " exceeds " + std::to_string(bytes.size()) + " bytes");
  }
  if (total < bytes.size()) {
    throw TraciError(Errc::MalformedCommand, std::to_string(bytes.size() - total) + " trailing bytes after message");
  }
  ByteReader in(bytes.subspan(4, total - 4));
  TraciMessage msg;
  while (!in.at_end()) msg.commands.push_back(decode_command(in));
  return msg;
}

TraciCommand encode_status(const StatusResponse& status) {
  ByteWriter w;
  w.u8(static_cast<std::uint8_t>(status.result));
  w.string(status.description);
  return {status.for_command, w.take()};
}

StatusResponse decode_status(const TraciCommand& cmd) {
  ByteReader in(cmd.payload);
  StatusResponse status;
  status.for_command = cmd.command_id;
  try {
    std::uint8_t code = in.u8();
    switch (code) {
      case ids::RTYPE_OK: status.result = ResultCode::Ok; break;
      case ids::RTYPE_NOTIMPLEMENTED: status.result = ResultCode::NotImplemented; break;
      case ids::RTYPE_ERR: status.result = ResultCode::Err; break;
      default: throw TraciError(Errc::MalformedCommand, "unknown result code " + hex_byte(code));
    }
    status.description = in.string();
  } catch (const TraciError& e) {
    if (e.code() == Errc::MalformedCommand) throw;
    throw TraciError(Errc::MalformedCommand, std::string("status response: ") + e.what());
  }
  if (!in.at_end()) throw TraciError(Errc::MalformedCommand, "trailing bytes in status response");
  if (status.result != ResultCode::Ok && status.description.empty()) status.description = "(no description)";
  return status;
}

std::uint8_t type_tag(const TraciValue& value) {
  struct Visitor {
    std::uint8_t operator()(double) const { return ids::TYPE_DOUBLE; }
    std::uint8_t operator()(std::int32_t) const { return ids::TYPE_INTEGER; }
    std::uint8_t operator()(const std::string&) const { return ids::TYPE_STRING; }
    std::uint8_t operator()(const std::vector<std::string>&) const { return ids::TYPE_STRINGLIST; }
    std::uint8_t operator()(const Position2D&) const { return ids::POSITION_2D; }
    std::uint8_t operator()(const Color&) const { return ids::TYPE_COLOR; }
  };
  return std::visit(Visitor{}, value);
}

void encode_value(const TraciValue& value, ByteWriter& out) {
  out.u8(type_tag(value));
  struct Visitor {
    ByteWriter& out;
    void operator()(double v) const { out.f64(v); }
    void operator()(std::int32_t v) const { out.i32(v); }
    void operator()(const std::string& v) const { out.string(v); }
    void operator()(const std::vector<std::string>& v) const { out.string_list(v); }
    void operator()(const Position2D& v) const {
      out.f64(v.x);
      out.f64(v.y);
    }
    void operator()(const Color& v) const {
      out.u8(v.r);
      out.u8(v.g);
      out.u8(v.b);
      out.u8(v.a);
    }
  };
  std::visit(Visitor{out}, value);
}

TraciValue decode_value(ByteReader& in) {
  std::uint8_t tag = in.u8();
  switch (tag) {
    case ids::TYPE_DOUBLE: return in.f64();
    case ids::TYPE_INTEGER: return in.i32();
    case ids::TYPE_STRING: return in.string();
    case ids::TYPE_STRINGLIST: return in.string_list();
    case ids::POSITION_2D: {
      double x = in.f64();
      double y = in.f64();
      return Position2D{x, y};
    }
    case ids::TYPE_COLOR: {
      Color c;
      c.r = in.u8();
      c.g = in.u8();
      c.b = in.u8();
      c.a = in.u8();
      return c;
    }
    default: throw TraciError(Errc::MalformedCommand, "unsupported value type " + hex_byte(tag));
  }
}

}  // namespace tbridge::traci
