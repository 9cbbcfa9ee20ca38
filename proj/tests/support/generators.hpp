// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tbridge/osc/packet.hpp"
#include "tbridge/traci/message.hpp"

namespace tbridge::test {

using Rng = std::mt19937_64;

inline std::vector<std::uint8_t> random_bytes(Rng& rng, std::size_t n) {
  std::uniform_int_distribution<int> byte(0, 255);
  std::vector<std::uint8_t> out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(byte(rng));
  return out;
}

inline std::string random_text(Rng& rng, std::size_t max_len, bool allow_nul = true) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> ch(allow_nul ? 0 : 1, 255);
  std::string s(len(rng), '\0');
  for (auto& c : s) c = static_cast<char>(ch(rng));
  return s;
}

/// Payload sizes straddle the 255-byte short/long header boundary on purpose.
inline traci::TraciMessage random_traci_message(Rng& rng) {
  std::uniform_int_distribution<int> count(0, 6);
  std::uniform_int_distribution<int> shape(0, 3);
  traci::TraciMessage m;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    std::size_t size = 0;
    switch (shape(rng)) {
      case 0: size = std::uniform_int_distribution<std::size_t>(0, 16)(rng); break;
      case 1: size = std::uniform_int_distribution<std::size_t>(248, 262)(rng); break;
      case 2: size = std::uniform_int_distribution<std::size_t>(0, 600)(rng); break;
      default: size = std::uniform_int_distribution<std::size_t>(0, 5000)(rng); break;
    }
    m.commands.push_back({static_cast<std::uint8_t>(std::uniform_int_distribution<int>(0, 255)(rng)), random_bytes(rng, size)});
  }
  return m;
}

inline double random_double(Rng& rng) {
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0: return std::uniform_real_distribution<double>(-1e6, 1e6)(rng);
    case 1: return std::uniform_int_distribution<int>(-5, 5)(rng);
    case 2: return std::ldexp(std::uniform_real_distribution<double>(-1, 1)(rng), std::uniform_int_distribution<int>(-1000, 1000)(rng));
    default: return -std::ldexp(1.0, 30);  // SUMO's INVALID_DOUBLE
  }
}

inline traci::TraciValue random_traci_value(Rng& rng) {
  switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
    case 0: return random_double(rng);
    case 1: return static_cast<std::int32_t>(rng());
    case 2: return random_text(rng, 40);
    case 3: {
      std::vector<std::string> list(std::uniform_int_distribution<std::size_t>(0, 8)(rng));
      for (auto& s : list) s = random_text(rng, 12);
      return list;
    }
    case 4: return traci::Position2D{random_double(rng), random_double(rng)};
    default: {
      auto b = random_bytes(rng, 4);
      return traci::Color{b[0], b[1], b[2], b[3]};
    }
  }
}

inline osc::Argument random_osc_argument(Rng& rng) {
  switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
    case 0: return static_cast<std::int32_t>(rng());
    case 1: return std::uniform_real_distribution<float>(-1e5f, 1e5f)(rng);
    case 2: return random_text(rng, 24, false);
    case 3: return random_double(rng);
    case 4: return static_cast<std::int64_t>(rng());
    default: return osc::Blob{random_bytes(rng, std::uniform_int_distribution<std::size_t>(0, 13)(rng))};
  }
}

inline osc::Message random_osc_message(Rng& rng) {
  osc::Message m;
  m.address = "/" + random_text(rng, 20, false);
  const auto n = std::uniform_int_distribution<std::size_t>(0, 8)(rng);
  for (std::size_t i = 0; i < n; ++i) m.args.push_back(random_osc_argument(rng));
  return m;
}

inline osc::Packet random_osc_packet(Rng& rng) {
  if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) return random_osc_message(rng);
  osc::Bundle b;
  b.timetag = rng();
  const auto n = std::uniform_int_distribution<std::size_t>(0, 6)(rng);
  for (std::size_t i = 0; i < n; ++i) b.messages.push_back(random_osc_message(rng));
  return b;
}

/// Flips, inserts, deletes or truncates a few bytes of a valid encoding.
inline std::vector<std::uint8_t> mutate(Rng& rng, std::vector<std::uint8_t> bytes) {
  const int edits = std::uniform_int_distribution<int>(1, 4)(rng);
  for (int i = 0; i < edits; ++i) {
    const std::size_t pos = bytes.empty() ? 0 : std::uniform_int_distribution<std::size_t>(0, bytes.size() - 1)(rng);
    switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
      case 0:
        if (!bytes.empty()) bytes[pos] ^= static_cast<std::uint8_t>(1u << std::uniform_int_distribution<int>(0, 7)(rng));
        break;
      case 1: bytes.insert(bytes.begin() + static_cast<std::ptrdiff_t>(pos), static_cast<std::uint8_t>(rng())); break;
      case 2:
        if (!bytes.empty()) bytes.erase(bytes.begin() + static_cast<std::ptrdiff_t>(pos));
        break;
      default: bytes.resize(pos); break;
    }
  }
  return bytes;
}

}  // namespace tbridge::test
