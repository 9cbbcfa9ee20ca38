// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tbridge/common/vec.hpp"

namespace tbridge::net {

enum class NetErrc { MalformedXml, MissingShape, BadLinkIndex, DanglingLane };

const char* to_string(NetErrc code);

class NetError : public std::runtime_error {
 public:
  NetError(NetErrc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  NetErrc code() const { return code_; }

 private:
  NetErrc code_;
};

/// A lane centre line in simulation-plane meters. At least two points, no two
/// consecutive points identical.
struct Lane {
  std::string id;
  std::vector<Vec2> shape;

  friend bool operator==(const Lane&, const Lane&) = default;
};

/// A connection controlled by a traffic light: `link_index` is its position in
/// the junction's signal string.
struct TlConnection {
  std::string lane_in;
  std::string lane_out;
  std::string tl_id;
  int link_index = 0;

  friend bool operator==(const TlConnection&, const TlConnection&) = default;
};

struct Junction {
  std::string id;
  std::string type;
  Vec2 position;

  friend bool operator==(const Junction&, const Junction&) = default;
};

struct Network {
  std::map<std::string, Lane> lanes;  // includes internal (':'-prefixed) lanes
  std::vector<TlConnection> tl_connections;
  std::vector<Junction> junctions;
  std::size_t connection_count = 0;  // all <connection> elements, controlled or not

  std::size_t traffic_light_junction_count() const;

  friend bool operator==(const Network&, const Network&) = default;
};

/// Parses a SUMO `.net.xml` document. Only `net`, `junction`, `edge/lane` and
/// `connection` elements are read; everything else is skipped.
///
/// Throws NetError: MalformedXml (not XML, root is not `net`, connection lacks
/// from/fromLane), MissingShape (a lane used by a controlled connection has no
/// usable shape), BadLinkIndex (non-integer or negative linkIndex).
Network parse_network(std::string_view xml);

Network load_network(const std::filesystem::path& path);

}  // namespace tbridge::net
