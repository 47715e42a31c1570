#pragma once

#include <string>
#include <vector>

namespace acp {

struct CliResult {
  int exit_code = 0;          // 0 success/true, 1 mathematical negative, 2 input error
  std::string report;         // JSON report (empty only on usage errors)
  std::string error;          // human-readable diagnostic for exit code 2
};

// Full command dispatch, shared by the acpcert binary and the test suites.
// args excludes argv[0].
CliResult run_command(const std::vector<std::string>& args);

}  // namespace acp
