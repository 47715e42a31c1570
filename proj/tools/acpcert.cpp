#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "acp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const auto start = std::chrono::steady_clock::now();
  const acp::CliResult result = acp::run_command(args);
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);

  if (!result.error.empty()) std::cerr << "acpcert: " << result.error << "\n";
  // timing goes to stderr so reports stay byte-identical across runs
  std::cerr << "acpcert: " << elapsed.count() << " ms\n";
  std::cout << result.report;
  return result.exit_code;
}
