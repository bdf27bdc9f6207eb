#pragma once

#include <stdexcept>
#include <string>

namespace polydist {

// Runtime failure carrying a stable machine-readable code of the form
// "area.condition" in addition to the human-readable message.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

}  // namespace polydist
