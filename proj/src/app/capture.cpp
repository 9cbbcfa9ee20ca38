// SPDX-License-Identifier: Apache-2.0
#include "tbridge/app/capture.hpp"

#include <nlohmann/json.hpp>

namespace tbridge::app {

using nlohmann::json;

namespace {

json step_json(const StepResult& r) {
  return {{"sim_time", r.sim_time}, {"departed", r.departed_ids}, {"arrived", r.arrived_ids}};
}

json vehicle_json(const VehicleState& v) {
  return {{"id", v.id},       {"x", v.position.x},         {"y", v.position.y}, {"angle", v.angle},
          {"speed", v.speed}, {"acceleration", v.acceleration}, {"vtype", v.vtype}, {"sim_time", v.sim_time}};
}

VehicleState vehicle_from(const json& j) {
  VehicleState v;
  v.id = j.at("id").get<std::string>();
  v.position = {j.at("x").get<double>(), j.at("y").get<double>()};
  v.angle = j.at("angle").get<double>();
  v.speed = j.at("speed").get<double>();
  v.acceleration = j.at("acceleration").get<double>();
  v.vtype = j.at("vtype").get<std::string>();
  v.sim_time = j.at("sim_time").get<double>();
  return v;
}

}  // namespace

RecordingSource::RecordingSource(TrafficSource& inner, const std::filesystem::path& out)
    : inner_(inner), out_(out, std::ios::trunc) {
  if (!out_) throw std::runtime_error("cannot write capture file: " + out.string());
  write(json{{"type", "tbridge-capture"}, {"version", kCaptureVersion}}.dump());
}

void RecordingSource::write(const std::string& line) {
  out_ << line << '\n';
  ++lines_;
}

StepResult RecordingSource::step(double target_time) {
  auto r = inner_.step(target_time);
  write(json{{"call", "step"}, {"target", target_time}, {"result", step_json(r)}}.dump());
  return r;
}

std::vector<VehicleState> RecordingSource::vehicle_states(std::span<const std::string> ids) {
  auto r = inner_.vehicle_states(ids);
  json arr = json::array();
  for (const auto& v : r) arr.push_back(vehicle_json(v));
  write(json{{"call", "vehicles"}, {"result", arr}}.dump());
  return r;
}

std::vector<LightState> RecordingSource::light_states(std::span<const std::string> junction_ids) {
  auto r = inner_.light_states(junction_ids);
  write(json{{"call", "lights"}, {"result", r}}.dump());
  return r;
}

void RecordingSource::close() {
  out_.flush();
  inner_.close();
}

ReplaySource::ReplaySource(const std::filesystem::path& in) : in_(in), path_(in) {
  if (!in_) throw ReplayError("capture file not found: " + in.string());
  std::string header;
  std::getline(in_, header);
  ++line_no_;
  json h = json::parse(header, nullptr, false);
  if (h.is_discarded() || h.value("type", "") != "tbridge-capture" || h.value("version", 0) != kCaptureVersion) {
    throw ReplayError(in.string() + ": not a capture file (version " + std::to_string(kCaptureVersion) + ")");
  }
}

std::string ReplaySource::next(const char* call) {
  std::string line;
  if (!std::getline(in_, line)) throw ReplayError("replay finished after " + std::to_string(steps_) + " steps");
  ++line_no_;
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw ReplayError(path_.string() + ":" + std::to_string(line_no_) + ": malformed line");
  }
  if (j.value("call", "") != call) {
    throw ReplayError(path_.string() + ":" + std::to_string(line_no_) + ": expected a '" + call + "' record");
  }
  return line;
}

StepResult ReplaySource::step(double) {
  auto j = json::parse(next("step")).at("result");
  StepResult r;
  r.sim_time = j.at("sim_time").get<double>();
  r.departed_ids = j.at("departed").get<std::vector<std::string>>();
  r.arrived_ids = j.at("arrived").get<std::vector<std::string>>();
  ++steps_;
  return r;
}

std::vector<VehicleState> ReplaySource::vehicle_states(std::span<const std::string>) {
  const json j = json::parse(next("vehicles"));
  std::vector<VehicleState> out;
  for (const auto& v : j.at("result")) out.push_back(vehicle_from(v));
  return out;
}

std::vector<LightState> ReplaySource::light_states(std::span<const std::string>) {
  return json::parse(next("lights")).at("result").get<std::vector<LightState>>();
}

}  // namespace tbridge::app
