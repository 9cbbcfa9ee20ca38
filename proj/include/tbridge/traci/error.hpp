// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace tbridge::traci {

enum class Errc {
  CommandTooLarge,
  Truncated,
  MalformedCommand,
  ConnectionRefused,
  HandshakeMismatch,
  ConnectionLost,
  ServerError,
  UnknownVehicle,
  UnknownJunction,
  UnexpectedResponse,
};

const char* to_string(Errc code);

class TraciError : public std::runtime_error {
 public:
  TraciError(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace tbridge::traci
