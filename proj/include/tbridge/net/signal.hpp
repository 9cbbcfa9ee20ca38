// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>

namespace tbridge::net {

/// One link's state, one character of a signal string such as "GrGr".
enum class SignalState { Green, GreenMinor, Yellow, Red, Off, OffBlinking, RedYellow, Stop, Unknown };

/// 'G' 'g' 'y' 'r' 'O' 'o' 'u' 's'; anything else is Unknown.
SignalState signal_from_char(char c);
char to_char(SignalState s);  // '?' for Unknown
std::string_view to_string(SignalState s);

}  // namespace tbridge::net
