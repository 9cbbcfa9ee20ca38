// SPDX-License-Identifier: Apache-2.0
#include "tbridge/net/network.hpp"

#include <expat.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

namespace tbridge::net {

const char* to_string(NetErrc code) {
  switch (code) {
    case NetErrc::MalformedXml: return "MalformedXml";
    case NetErrc::MissingShape: return "MissingShape";
    case NetErrc::BadLinkIndex: return "BadLinkIndex";
    case NetErrc::DanglingLane: return "DanglingLane";
  }
  return "Unknown";
}

std::size_t Network::traffic_light_junction_count() const {
  return static_cast<std::size_t>(
      std::count_if(junctions.begin(), junctions.end(), [](const Junction& j) { return j.type.find("traffic_light") == 0; }));
}

namespace {

std::optional<double> parse_double(std::string_view s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<long> parse_long(std::string_view s) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

// "x,y[,z] x,y[,z] ..." -> deduplicated 2D points; nullopt when fewer than two remain.
std::optional<std::vector<Vec2>> parse_shape(std::string_view text) {
  std::vector<Vec2> pts;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r')) ++i;
    if (i >= text.size()) break;
    std::size_t end = i;
    while (end < text.size() && text[end] != ' ' && text[end] != '\t' && text[end] != '\n' && text[end] != '\r') ++end;
    std::string_view tok = text.substr(i, end - i);
    i = end;
    auto c1 = tok.find(',');
    if (c1 == std::string_view::npos) return std::nullopt;
    auto c2 = tok.find(',', c1 + 1);
    auto x = parse_double(tok.substr(0, c1));
    auto y = parse_double(tok.substr(c1 + 1, c2 == std::string_view::npos ? std::string_view::npos : c2 - c1 - 1));
    if (!x || !y) return std::nullopt;
    if (c2 != std::string_view::npos && !parse_double(tok.substr(c2 + 1))) return std::nullopt;
    Vec2 p{*x, *y};
    if (pts.empty() || !(pts.back() == p)) pts.push_back(p);
  }
  if (pts.size() < 2) return std::nullopt;
  return pts;
}

const char* attr(const XML_Char** atts, const char* name) {
  for (int i = 0; atts[i] != nullptr; i += 2) {
    if (std::strcmp(atts[i], name) == 0) return atts[i + 1];
  }
  return nullptr;
}

struct ParseState {
  XML_Parser parser = nullptr;
  Network net;
  int depth = 0;
  bool in_edge = false;
  std::set<std::string> shapeless_lanes;
  std::optional<NetError> error;

  std::string where() const {
    return "line " + std::to_string(XML_GetCurrentLineNumber(parser));
  }

  void fail(NetErrc code, const std::string& msg) {
    if (!error) error.emplace(code, msg + " (" + where() + ")");
    XML_StopParser(parser, XML_FALSE);
  }

  void start(const char* name, const XML_Char** atts) {
    ++depth;
    if (depth == 1) {
      if (std::strcmp(name, "net") != 0) fail(NetErrc::MalformedXml, std::string("root element is <") + name + ">, expected <net>");
      return;
    }
    if (depth == 2) {
      if (std::strcmp(name, "edge") == 0) {
        in_edge = true;
      } else if (std::strcmp(name, "junction") == 0) {
        on_junction(atts);
      } else if (std::strcmp(name, "connection") == 0) {
        on_connection(atts);
      }
    } else if (depth == 3 && in_edge && std::strcmp(name, "lane") == 0) {
      on_lane(atts);
    }
  }

  void end(const char*) {
    if (depth == 2) in_edge = false;
    --depth;
  }

  void on_junction(const XML_Char** atts) {
    const char* id = attr(atts, "id");
    if (id == nullptr) return;
    Junction j;
    j.id = id;
    if (const char* t = attr(atts, "type")) j.type = t;
    const char* x = attr(atts, "x");
    const char* y = attr(atts, "y");
    if (x && y) {
      auto px = parse_double(x);
      auto py = parse_double(y);
      if (px && py) j.position = {*px, *py};
    }
    net.junctions.push_back(std::move(j));
  }

  void on_lane(const XML_Char** atts) {
    const char* id = attr(atts, "id");
    if (id == nullptr) return;
    const char* shape = attr(atts, "shape");
    std::optional<std::vector<Vec2>> pts = shape ? parse_shape(shape) : std::nullopt;
    if (!pts) {
      shapeless_lanes.insert(id);
      return;
    }
    net.lanes.insert_or_assign(id, Lane{id, std::move(*pts)});
  }

  void on_connection(const XML_Char** atts) {
    ++net.connection_count;
    const char* tl = attr(atts, "tl");
    const char* link = attr(atts, "linkIndex");
    if (tl == nullptr || link == nullptr) return;
    auto index = parse_long(link);
    if (!index || *index < 0 || *index > 1'000'000) {
      fail(NetErrc::BadLinkIndex, std::string("linkIndex '") + link + "'");
      return;
    }
    const char* from = attr(atts, "from");
    const char* from_lane = attr(atts, "fromLane");
    if (from == nullptr || from_lane == nullptr || !parse_long(from_lane)) {
      fail(NetErrc::MalformedXml, "controlled connection without from/fromLane");
      return;
    }
    TlConnection c;
    c.lane_in = std::string(from) + "_" + from_lane;
    const char* to = attr(atts, "to");
    const char* to_lane = attr(atts, "toLane");
    if (to && to_lane) c.lane_out = std::string(to) + "_" + to_lane;
    c.tl_id = tl;
    c.link_index = static_cast<int>(*index);
    net.tl_connections.push_back(std::move(c));
  }
};

void XMLCALL on_start(void* user, const XML_Char* name, const XML_Char** atts) {
  static_cast<ParseState*>(user)->start(name, atts);
}

void XMLCALL on_end(void* user, const XML_Char* name) { static_cast<ParseState*>(user)->end(name); }

}  // namespace

Network parse_network(std::string_view xml) {
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(XML_ParserCreate(nullptr),
                                                                                       &XML_ParserFree);
  if (!parser) throw std::bad_alloc();
  ParseState state;
  state.parser = parser.get();
  XML_SetUserData(parser.get(), &state);
  XML_SetElementHandler(parser.get(), on_start, on_end);

  // XML_Parse takes an int length; feed large documents in chunks
  constexpr std::size_t kChunk = 1 << 24;
  std::size_t offset = 0;
  XML_Status status = XML_STATUS_OK;
  do {
    std::size_t n = std::min(kChunk, xml.size() - offset);
    bool last = offset + n == xml.size();
    status = XML_Parse(parser.get(), xml.data() + offset, static_cast<int>(n), last ? XML_TRUE : XML_FALSE);
    offset += n;
    if (last) break;
  } while (status == XML_STATUS_OK);

  if (state.error) throw *state.error;
  if (status != XML_STATUS_OK) {
    throw NetError(NetErrc::MalformedXml, std::string(XML_ErrorString(XML_GetErrorCode(parser.get()))) + " at line " +
                                              std::to_string(XML_GetCurrentLineNumber(parser.get())));
  }

  for (const auto& c : state.net.tl_connections) {
    if (state.shapeless_lanes.count(c.lane_in) != 0 && state.net.lanes.count(c.lane_in) == 0) {
      throw NetError(NetErrc::MissingShape, "lane '" + c.lane_in + "' used by " + c.tl_id + ":" +
                                                std::to_string(c.link_index) + " has no usable shape");
    }
  }
  return std::move(state.net);
}

Network load_network(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open network file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_network(ss.str());
}

}  // namespace tbridge::net
