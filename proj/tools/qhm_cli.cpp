// Copyright the qhm-lab contributors.
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "qhm/commands.hpp"

int main(int argc, char **argv)
{
  return qhm::run_cli(argc, argv, std::cout, std::cerr);
}
