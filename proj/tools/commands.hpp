// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qinterf::cli {

enum ExitCode : int {
  kSuccess = 0,
  kConfigError = 2,
  kNumericalError = 3,
  kIoError = 4,
};

/// Entry point of the `qinterf` tool. args[0] is the program name.
/// Normal output goes to `out` unless redirected with --out.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qinterf::cli
