// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace tbridge::app {

/// The `bridge` command line: run, check-net, capture, replay. Returns the
/// process exit code. `interrupted` is polled by the long-running commands.
int bridge_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                const std::function<bool()>& interrupted);

/// The `mock-sumo` command line: serve a scenario over TraCI until interrupted.
int mock_sumo_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                   const std::function<bool()>& interrupted);

}  // namespace tbridge::app
