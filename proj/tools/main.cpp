// SPDX-License-Identifier: Apache-2.0

#include "jointwork/cli.hpp"

int main(int argc, char** argv) { return jw::run(argc, argv); }
