// SPDX-License-Identifier: Apache-2.0
// Command line front end: subcommands for generating arrangements, counting
// joints and multijoints, vanishing polynomials, peeling certificates and
// their verification, partitions, incidence censuses, surface line tests,
// and the hypergeometric tail. Every run that measures something emits a
// self-describing JSON report; byte-identical for fixed inputs and seeds
// except for the "timestamp" field.

#pragma once

#include <string>
#include <vector>

namespace jw {

// Exit codes: 0 success, 1 usage or input error, 2 a verified bound or
// certificate violation. `args` excludes the program name.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

// SHA-256 of a report with its "timestamp" field removed: the key under
// which reports are deterministic.
std::string report_body_sha256(const std::string& report_json);

}  // namespace jw
