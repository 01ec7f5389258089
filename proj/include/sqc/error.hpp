#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace sqc {

// Error codes are single tokens so the CLI can emit machine-parsable
// "error: <code>: <message>" lines.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace sqc
