// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "signal_flag.hpp"
#include "tbridge/app/cli.hpp"

int main(int argc, char** argv) {
  install_signal_handlers();
  return tbridge::app::mock_sumo_main({argv, argv + argc}, std::cout, std::cerr, interrupted);
}
