#pragma once

#include <stdexcept>
#include <string>

namespace valq {

// every failure carries a short machine-readable code (NOT_IN_R, ORACLE_MISSING, ...)
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

}  // namespace valq
