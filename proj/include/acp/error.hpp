#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace acp {

// Error codes travel with the exception so callers (notably the CLI) can map
// failures to exit codes without parsing what().
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace acp
