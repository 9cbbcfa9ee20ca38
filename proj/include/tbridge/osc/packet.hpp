// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace tbridge::osc {

enum class OscErrc { InvalidAddress, UnsupportedArgumentType, Malformed };

class OscError : public std::runtime_error {
 public:
  OscError(OscErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  OscErrc code() const noexcept { return code_; }

 private:
  OscErrc code_;
};

struct Blob {
  std::vector<std::uint8_t> bytes;
  friend bool operator==(const Blob&, const Blob&) = default;
};

/// 'i', 'f', 's', 'd', 'h', 'b'
using Argument = std::variant<std::int32_t, float, std::string, double, std::int64_t, Blob>;

struct Message {
  std::string address;
  std::vector<Argument> args;
  friend bool operator==(const Message&, const Message&) = default;
};

inline constexpr std::uint64_t kImmediately = 1;

/// Bundles hold messages only; nested bundles are not produced and are
/// rejected by the decoder.
struct Bundle {
  std::uint64_t timetag = kImmediately;
  std::vector<Message> messages;
  friend bool operator==(const Bundle&, const Bundle&) = default;
};

using Packet = std::variant<Message, Bundle>;

char type_tag(const Argument& arg);
std::string type_tags(const Message& msg);  // without the leading ','

std::vector<std::uint8_t> encode(const Message& msg);
std::vector<std::uint8_t> encode(const Bundle& bundle);
std::vector<std::uint8_t> encode(const Packet& packet);

std::size_t encoded_size(const Message& msg);
std::size_t encoded_size(const Bundle& bundle);

/// Throws OscError. Never reads past `bytes`.
Packet decode(std::span<const std::uint8_t> bytes);
Message decode_message(std::span<const std::uint8_t> bytes);

}  // namespace tbridge::osc
