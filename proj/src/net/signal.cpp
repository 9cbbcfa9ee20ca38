// SPDX-License-Identifier: Apache-2.0
#include "tbridge/net/signal.hpp"

namespace tbridge::net {

SignalState signal_from_char(char c) {
  switch (c) {
    case 'G': return SignalState::Green;
    case 'g': return SignalState::GreenMinor;
    case 'y': return SignalState::Yellow;
    case 'r': return SignalState::Red;
    case 'O': return SignalState::Off;
    case 'o': return SignalState::OffBlinking;
    case 'u': return SignalState::RedYellow;
    case 's': return SignalState::Stop;
    default: return SignalState::Unknown;
  }
}

char to_char(SignalState s) {
  switch (s) {
    case SignalState::Green: return 'G';
    case SignalState::GreenMinor: return 'g';
    case SignalState::Yellow: return 'y';
    case SignalState::Red: return 'r';
    case SignalState::Off: return 'O';
    case SignalState::OffBlinking: return 'o';
    case SignalState::RedYellow: return 'u';
    case SignalState::Stop: return 's';
    case SignalState::Unknown: break;
  }
  return '?';
}

std::string_view to_string(SignalState s) {
  switch (s) {
    case SignalState::Green: return "green";
    case SignalState::GreenMinor: return "green_minor";
    case SignalState::Yellow: return "yellow";
    case SignalState::Red: return "red";
    case SignalState::Off: return "off";
    case SignalState::OffBlinking: return "off_blinking";
    case SignalState::RedYellow: return "red_yellow";
    case SignalState::Stop: return "stop";
    case SignalState::Unknown: break;
  }
  return "unknown";
}

}  // namespace tbridge::net
