// SPDX-License-Identifier: Apache-2.0
#include "tbridge/osc/packet.hpp"

#include <bit>
#include <cstring>

namespace tbridge::osc {

namespace {

constexpr char kBundleTag[8] = {'#', 'b', 'u', 'n', 'd', 'l', 'e', '\0'};

std::size_t padded(std::size_t n) { return (n + 3) & ~std::size_t{3}; }
std::size_t padded_string(std::size_t len) { return padded(len + 1); }

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void put_string(std::vector<std::uint8_t>& out, const std::string& s) {
  out.insert(out.end(), s.begin(), s.end());
  out.resize(out.size() + padded_string(s.size()) - s.size(), 0);
}

void validate_address(const std::string& address) {
  if (address.empty() || address.front() != '/') throw OscError(OscErrc::InvalidAddress, "OSC address must start with '/': \"" + address + "\"");
  if (address.find('\0') != std::string::npos) throw OscError(OscErrc::InvalidAddress, "OSC address contains NUL");
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t remaining() const { return bytes_.size() - pos_; }

  std::span<const std::uint8_t> take(std::size_t n) {
    if (n > remaining()) throw OscError(OscErrc::Malformed, "OSC packet truncated");
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  std::uint32_t u32() {
    auto b = take(4);
    return std::uint32_t{b[0]} << 24 | std::uint32_t{b[1]} << 16 | std::uint32_t{b[2]} << 8 | b[3];
  }

  std::uint64_t u64() {
    const std::uint64_t hi = u32();
    return hi << 32 | u32();
  }

  std::string string() {
    const auto rest = bytes_.subspan(pos_);
    const auto* nul = static_cast<const std::uint8_t*>(std::memchr(rest.data(), 0, rest.size()));
    if (nul == nullptr) throw OscError(OscErrc::Malformed, "OSC string not terminated");
    const std::size_t len = static_cast<std::size_t>(nul - rest.data());
    auto raw = take(padded_string(len));
    for (std::size_t i = len; i < raw.size(); ++i) {
      if (raw[i] != 0) throw OscError(OscErrc::Malformed, "OSC string padding not zero");
    }
    return std::string(reinterpret_cast<const char*>(raw.data()), len);
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::size_t argument_size(const Argument& arg) {
  return std::visit(
      [](const auto& v) -> std::size_t {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return padded_string(v.size());
        } else if constexpr (std::is_same_v<T, Blob>) {
          return 4 + padded(v.bytes.size());
        } else {
          return sizeof(T);
        }
      },
      arg);
}

}  // namespace

char type_tag(const Argument& arg) {
  static constexpr char kTags[] = {'i', 'f', 's', 'd', 'h', 'b'};
  return kTags[arg.index()];
}

std::string type_tags(const Message& msg) {
  std::string tags;
  tags.reserve(msg.args.size());
  for (const auto& a : msg.args) tags.push_back(type_tag(a));
  return tags;
}

std::size_t encoded_size(const Message& msg) {
  std::size_t n = padded_string(msg.address.size()) + padded_string(msg.args.size() + 1);
  for (const auto& a : msg.args) n += argument_size(a);
  return n;
}

std::size_t encoded_size(const Bundle& bundle) {
  std::size_t n = 16;
  for (const auto& m : bundle.messages) n += 4 + encoded_size(m);
  return n;
}

std::vector<std::uint8_t> encode(const Message& msg) {
  validate_address(msg.address);
  std::vector<std::uint8_t> out;
  out.reserve(encoded_size(msg));
  put_string(out, msg.address);
  put_string(out, "," + type_tags(msg));
  for (const auto& arg : msg.args) {
    std::visit(
        [&out](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, std::int32_t>) {
            put_u32(out, static_cast<std::uint32_t>(v));
          } else if constexpr (std::is_same_v<T, float>) {
            put_u32(out, std::bit_cast<std::uint32_t>(v));
          } else if constexpr (std::is_same_v<T, std::string>) {
            if (v.find('\0') != std::string::npos) throw OscError(OscErrc::UnsupportedArgumentType, "OSC string argument contains NUL");
            put_string(out, v);
          } else if constexpr (std::is_same_v<T, double>) {
            put_u64(out, std::bit_cast<std::uint64_t>(v));
          } else if constexpr (std::is_same_v<T, std::int64_t>) {
            put_u64(out, static_cast<std::uint64_t>(v));
          } else {
            if (v.bytes.size() > 0x7fffffff) throw OscError(OscErrc::UnsupportedArgumentType, "OSC blob too large");
            put_u32(out, static_cast<std::uint32_t>(v.bytes.size()));
            out.insert(out.end(), v.bytes.begin(), v.bytes.end());
            out.resize(padded(out.size()), 0);
          }
        },
        arg);
  }
  return out;
}

std::vector<std::uint8_t> encode(const Bundle& bundle) {
  std::vector<std::uint8_t> out;
  out.reserve(encoded_size(bundle));
  out.insert(out.end(), std::begin(kBundleTag), std::end(kBundleTag));
  put_u64(out, bundle.timetag);
  for (const auto& m : bundle.messages) {
    auto element = encode(m);
    put_u32(out, static_cast<std::uint32_t>(element.size()));
    out.insert(out.end(), element.begin(), element.end());
  }
  return out;
}

std::vector<std::uint8_t> encode(const Packet& packet) {
  return std::visit([](const auto& p) { return encode(p); }, packet);
}

Message decode_message(std::span<const std::uint8_t> bytes) {
  if (bytes.size() % 4 != 0) throw OscError(OscErrc::Malformed, "OSC message size not a multiple of 4");
  Reader in(bytes);
  Message msg;
  msg.address = in.string();
  if (msg.address.empty() || msg.address.front() != '/') throw OscError(OscErrc::InvalidAddress, "OSC address must start with '/'");
  if (in.remaining() == 0) return msg;  // OSC 1.0 allows a missing type tag string

  const std::string tags = in.string();
  if (tags.empty() || tags.front() != ',') throw OscError(OscErrc::Malformed, "OSC type tags must start with ','");
  msg.args.reserve(tags.size() - 1);
  for (std::size_t i = 1; i < tags.size(); ++i) {
    switch (tags[i]) {
      case 'i': msg.args.emplace_back(static_cast<std::int32_t>(in.u32())); break;
      case 'f': msg.args.emplace_back(std::bit_cast<float>(in.u32())); break;
      case 's': msg.args.emplace_back(in.string()); break;
      case 'd': msg.args.emplace_back(std::bit_cast<double>(in.u64())); break;
      case 'h': msg.args.emplace_back(static_cast<std::int64_t>(in.u64())); break;
      case 'b': {
        const std::uint32_t n = in.u32();
        if (n > in.remaining()) throw OscError(OscErrc::Malformed, "OSC blob truncated");
        auto raw = in.take(padded(n));
        msg.args.emplace_back(Blob{{raw.begin(), raw.begin() + n}});
        break;
      }
      default:
        throw OscError(OscErrc::UnsupportedArgumentType, std::string("unsupported OSC type tag '") + tags[i] + "'");
    }
  }
  if (in.remaining() != 0) throw OscError(OscErrc::Malformed, "trailing bytes after OSC arguments");
  return msg;
}

Packet decode(std::span<const std::uint8_t> bytes) {
  if (bytes.empty()) throw OscError(OscErrc::Malformed, "empty OSC packet");
  if (bytes.front() == '/') return decode_message(bytes);
  if (bytes.size() < 16 || std::memcmp(bytes.data(), kBundleTag, 8) != 0) throw OscError(OscErrc::Malformed, "not an OSC message or bundle");

  Reader in(bytes.subspan(8));
  Bundle bundle;
  bundle.timetag = in.u64();
  while (in.remaining() > 0) {
    const std::uint32_t size = in.u32();
    if (size == 0 || size % 4 != 0) throw OscError(OscErrc::Malformed, "bad OSC bundle element size");
    auto element = in.take(size);
    if (element.front() == '#') throw OscError(OscErrc::Malformed, "nested OSC bundles are not supported");
    bundle.messages.push_back(decode_message(element));
  }
  return bundle;
}

}  // namespace tbridge::osc
