// SPDX-License-Identifier: Apache-2.0

#include "hrr/shellio.hpp"

int main(int argc, char** argv) { return hrr::cli_main(argc, argv); }
