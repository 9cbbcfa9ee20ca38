// SPDX-License-Identifier: Apache-2.0
#include "tbridge/traci/storage.hpp"

#include <bit>
#include <limits>

#include "tbridge/traci/error.hpp"

namespace tbridge::traci {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::CommandTooLarge: return "CommandTooLarge";
    case Errc::Truncated: return "Truncated";
    case Errc::MalformedCommand: return "MalformedCommand";
    case Errc::ConnectionRefused: return "ConnectionRefused";
    case Errc::HandshakeMismatch: return "HandshakeMismatch";
    case Errc::ConnectionLost: return "ConnectionLost";
    case Errc::ServerError: return "ServerError";
    case Errc::UnknownVehicle: return "UnknownVehicle";
    case Errc::UnknownJunction: return "UnknownJunction";
    case Errc::UnexpectedResponse: return "UnexpectedResponse";
  }
  return "Unknown";
}

void ByteWriter::i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }

void ByteWriter::u32(std::uint32_t v) {
  buf_.push_back(static_cast<std::uint8_t>(v >> 24));
  buf_.push_back(static_cast<std::uint8_t>(v >> 16));
  buf_.push_back(static_cast<std::uint8_t>(v >> 8));
  buf_.push_back(static_cast<std::uint8_t>(v));
}

void ByteWriter::f64(double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  for (int shift = 56; shift >= 0; shift -= 8) buf_.push_back(static_cast<std::uint8_t>(bits >> shift));
}

void ByteWriter::string(std::string_view s) {
  if (s.size() > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
    throw TraciError(Errc::CommandTooLarge, "string too long");
  }
  i32(static_cast<std::int32_t>(s.size()));
  buf_.insert(buf_.end(), s.begin(), s.end());
}

void ByteWriter::string_list(std::span<const std::string> list) {
  i32(static_cast<std::int32_t>(list.size()));
  for (const auto& s : list) string(s);
}

void ByteReader::need(std::size_t n) const {
  if (remaining() < n) {
    throw TraciError(Errc::Truncated, "need " + std::to_string(n) + " bytes at offset " + std::to_string(pos_) +
                                          ", have " + std::to_string(remaining()));
  }
}

std::uint8_t ByteReader::u8() {
  need(1);
  return bytes_[pos_++];
}

std::uint32_t ByteReader::u32() {
  need(4);
  std::uint32_t v = (std::uint32_t{bytes_[pos_]} << 24) | (std::uint32_t{bytes_[pos_ + 1]} << 16) |
                    (std::uint32_t{bytes_[pos_ + 2]} << 8) | std::uint32_t{bytes_[pos_ + 3]};
  pos_ += 4;
  return v;
}

std::int32_t ByteReader::i32() { return static_cast<std::int32_t>(u32()); }

double ByteReader::f64() {
  need(8);
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits = (bits << 8) | bytes_[pos_ + i];
  pos_ += 8;
  return std::bit_cast<double>(bits);
}

std::string ByteReader::string() {
  std::int32_t len = i32();
  if (len < 0) throw TraciError(Errc::MalformedCommand, "negative string length");
  auto raw = bytes(static_cast<std::size_t>(len));
  return {raw.begin(), raw.end()};
}

std::vector<std::string> ByteReader::string_list() {
  std::int32_t count = i32();
  if (count < 0) throw TraciError(Errc::MalformedCommand, "negative list length");
  // each entry needs at least its 4-byte length; reject absurd counts before reserving
  if (static_cast<std::size_t>(count) > remaining() / 4) throw TraciError(Errc::Truncated, "string list longer than input");
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int32_t i = 0; i < count; ++i) out.push_back(string());
  return out;
}

std::span<const std::uint8_t> ByteReader::bytes(std::size_t n) {
  need(n);
  auto out = bytes_.subspan(pos_, n);
  pos_ += n;
  return out;
}

}  // namespace tbridge::traci
