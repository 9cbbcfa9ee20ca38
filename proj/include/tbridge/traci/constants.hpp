// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

// Identifiers from the public TraCI protocol description. Only the subset the
// bridge and the mock server speak is listed here.
namespace tbridge::traci::ids {

inline constexpr int kApiVersion = 22;
inline constexpr int kMinApiVersion = 20;

// commands
inline constexpr std::uint8_t CMD_GETVERSION = 0x00;
inline constexpr std::uint8_t CMD_SIMSTEP = 0x02;
inline constexpr std::uint8_t CMD_CLOSE = 0x7F;
inline constexpr std::uint8_t CMD_GET_TL_VARIABLE = 0xA2;
inline constexpr std::uint8_t RESPONSE_GET_TL_VARIABLE = 0xB2;
inline constexpr std::uint8_t CMD_GET_VEHICLE_VARIABLE = 0xA4;
inline constexpr std::uint8_t RESPONSE_GET_VEHICLE_VARIABLE = 0xB4;
inline constexpr std::uint8_t CMD_GET_SIM_VARIABLE = 0xAB;
inline constexpr std::uint8_t RESPONSE_GET_SIM_VARIABLE = 0xBB;

// result codes
inline constexpr std::uint8_t RTYPE_OK = 0x00;
inline constexpr std::uint8_t RTYPE_NOTIMPLEMENTED = 0x01;
inline constexpr std::uint8_t RTYPE_ERR = 0xFF;

// value type tags
inline constexpr std::uint8_t POSITION_2D = 0x01;
inline constexpr std::uint8_t TYPE_INTEGER = 0x09;
inline constexpr std::uint8_t TYPE_DOUBLE = 0x0B;
inline constexpr std::uint8_t TYPE_STRING = 0x0C;
inline constexpr std::uint8_t TYPE_STRINGLIST = 0x0E;
inline constexpr std::uint8_t TYPE_COLOR = 0x11;

// variables
inline constexpr std::uint8_t ID_LIST = 0x00;
inline constexpr std::uint8_t TL_RED_YELLOW_GREEN_STATE = 0x20;
inline constexpr std::uint8_t VAR_SPEED = 0x40;
inline constexpr std::uint8_t VAR_POSITION = 0x42;
inline constexpr std::uint8_t VAR_ANGLE = 0x43;
inline constexpr std::uint8_t VAR_TYPE = 0x4F;
inline constexpr std::uint8_t VAR_TIME = 0x66;
inline constexpr std::uint8_t VAR_ACCELERATION = 0x72;
inline constexpr std::uint8_t VAR_DEPARTED_VEHICLES_IDS = 0x74;
inline constexpr std::uint8_t VAR_ARRIVED_VEHICLES_IDS = 0x7A;
inline constexpr std::uint8_t VAR_DELTA_T = 0x7B;

}  // namespace tbridge::traci::ids
