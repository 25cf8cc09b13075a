// SPDX-License-Identifier: Apache-2.0
#include "r1tc/cli.hpp"

int main(int argc, char** argv) { return r1tc::cli_main(argc, argv); }
