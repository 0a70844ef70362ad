#pragma once

#include <stdexcept>
#include <string>

namespace wsm {

// Domain error carrying a stable machine-readable code ("on-wall",
// "incomparable", "weight-overflow", ...). The CLI prints the code verbatim.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace wsm
