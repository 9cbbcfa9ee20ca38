// SPDX-License-Identifier: Apache-2.0
#include "tbridge/mock/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace tbridge::mock {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw ScenarioError("scenario line " + std::to_string(line) + ": " + what);
}

double number(std::string_view s, int line) {
  double v = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size() || !std::isfinite(v)) fail(line, "bad number '" + std::string(s) + "'");
  return v;
}

Vec2 point(std::string_view s, int line) {
  const auto comma = s.find(',');
  if (comma == std::string_view::npos) fail(line, "expected x,y but got '" + std::string(s) + "'");
  return {number(s.substr(0, comma), line), number(s.substr(comma + 1), line)};
}

ScriptedVehicle parse_vehicle(std::istringstream& words, int line) {
  ScriptedVehicle v;
  std::string word;
  if (!(words >> v.id >> v.vtype)) fail(line, "vehicle needs an id and a type");
  std::string section;
  while (words >> word) {
    if (word == "depart" || word == "route" || word == "speed") {
      section = word;
      if (word == "depart") {
        if (!(words >> word)) fail(line, "depart needs a time");
        v.depart = number(word, line);
        section.clear();
      }
      continue;
    }
    if (section == "route") {
      v.route.push_back(point(word, line));
    } else if (section == "speed") {
      const auto at = word.find('@');
      SpeedChange c;
      c.speed = number(std::string_view(word).substr(0, at), line);
      if (at != std::string::npos) c.from = number(std::string_view(word).substr(at + 1), line);
      v.speeds.push_back(c);
    } else {
      fail(line, "unexpected '" + word + "'");
    }
  }
  if (v.speeds.empty()) fail(line, "vehicle " + v.id + " has no speed");
  return v;
}

ScriptedLight parse_light(std::istringstream& words, int line) {
  ScriptedLight l;
  if (!(words >> l.junction)) fail(line, "light needs a junction id");
  std::string word;
  while (words >> word) {
    const auto colon = word.rfind(':');
    if (colon == std::string::npos) fail(line, "phase must be state:duration, got '" + word + "'");
    l.program.push_back({word.substr(0, colon), number(std::string_view(word).substr(colon + 1), line)});
  }
  return l;
}

}  // namespace

void Scenario::validate() const {
  if (!(step_length > 0.0)) throw ScenarioError("step_length must be > 0");
  std::set<std::string> seen;
  for (const auto& v : vehicles) {
    if (!seen.insert(v.id).second) throw ScenarioError("duplicate vehicle id " + v.id);
    if (v.route.size() < 2) throw ScenarioError("vehicle " + v.id + " needs at least 2 waypoints");
    for (std::size_t i = 1; i < v.route.size(); ++i) {
      if (v.route[i] == v.route[i - 1]) throw ScenarioError("vehicle " + v.id + " repeats a waypoint");
    }
    if (v.depart < 0.0) throw ScenarioError("vehicle " + v.id + " departs before 0");
    if (v.speeds.empty() || v.speeds.front().from != 0.0) throw ScenarioError("vehicle " + v.id + " speed profile must start at 0");
    for (std::size_t i = 0; i < v.speeds.size(); ++i) {
      if (v.speeds[i].speed < 0.0) throw ScenarioError("vehicle " + v.id + " has a negative speed");
      if (i > 0 && !(v.speeds[i].from > v.speeds[i - 1].from)) throw ScenarioError("vehicle " + v.id + " speed changes out of order");
    }
  }
  seen.clear();
  for (const auto& l : lights) {
    if (!seen.insert(l.junction).second) throw ScenarioError("duplicate light " + l.junction);
    if (l.program.empty()) throw ScenarioError("light " + l.junction + " has no phases");
    for (const auto& p : l.program) {
      if (!(p.duration > 0.0)) throw ScenarioError("light " + l.junction + " has a phase with duration <= 0");
    }
  }
}

Scenario parse_scenario(std::istream& in) {
  Scenario s;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    std::string keyword;
    if (!(words >> keyword)) continue;
    if (keyword == "step_length") {
      std::string v;
      if (!(words >> v)) fail(line, "step_length needs a value");
      s.step_length = number(v, line);
    } else if (keyword == "vehicle") {
      s.vehicles.push_back(parse_vehicle(words, line));
    } else if (keyword == "light") {
      s.lights.push_back(parse_light(words, line));
    } else {
      fail(line, "unknown keyword '" + keyword + "'");
    }
  }
  s.validate();
  return s;
}

Scenario parse_scenario_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_scenario(in);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario " + path);
  return parse_scenario(in);
}

}  // namespace tbridge::mock
