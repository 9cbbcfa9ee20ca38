// SPDX-License-Identifier: Apache-2.0
#include "tbridge/core/config.hpp"

#include <cmath>
#include <stdexcept>

namespace tbridge::core {

void BridgeConfig::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(rate_n)) throw std::invalid_argument("rate_n must be > 0");
  if (!positive(culling_radius)) throw std::invalid_argument("culling_radius must be > 0");
  if (!(hysteresis >= 0.0) || !std::isfinite(hysteresis)) throw std::invalid_argument("hysteresis must be >= 0");
  if (cull_check_period < 1) throw std::invalid_argument("cull_check_period must be >= 1");
  if (height_check_period < 1) throw std::invalid_argument("height_check_period must be >= 1");
  if (!(pool_growth > 1.0)) throw std::invalid_argument("pool_growth must be > 1");
  if (snap_pitch && !positive(wheelbase)) throw std::invalid_argument("wheelbase must be > 0");
}

}  // namespace tbridge::core
