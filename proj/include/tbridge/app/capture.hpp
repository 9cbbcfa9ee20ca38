// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>

#include "tbridge/common/traffic_source.hpp"

// Capture files are JSON lines: a header line, then one line per source call
// in the order the producer made them. See README.md for the fields.
namespace tbridge::app {

inline constexpr int kCaptureVersion = 1;

class ReplayError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Passes every call through to `inner` and appends it to the capture file.
class RecordingSource final : public TrafficSource {
 public:
  RecordingSource(TrafficSource& inner, const std::filesystem::path& out);

  StepResult step(double target_time) override;
  std::vector<VehicleState> vehicle_states(std::span<const std::string> ids) override;
  std::vector<LightState> light_states(std::span<const std::string> junction_ids) override;
  void close() override;

  std::uint64_t lines() const { return lines_; }

 private:
  void write(const std::string& line);

  TrafficSource& inner_;
  std::ofstream out_;
  std::uint64_t lines_ = 0;
};

/// Plays a capture back. Calls must come in the recorded order; running past
/// the end or out of order throws ReplayError.
class ReplaySource final : public TrafficSource {
 public:
  explicit ReplaySource(const std::filesystem::path& in);

  StepResult step(double target_time) override;
  std::vector<VehicleState> vehicle_states(std::span<const std::string> ids) override;
  std::vector<LightState> light_states(std::span<const std::string> junction_ids) override;

  std::uint64_t steps() const { return steps_; }

 private:
  std::string next(const char* call);

  std::ifstream in_;
  std::filesystem::path path_;
  std::uint64_t line_no_ = 0;
  std::uint64_t steps_ = 0;
};

}  // namespace tbridge::app
