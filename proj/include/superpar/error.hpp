#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace superpar {

enum class ErrorCode {
  ZeroInverse,
  ShapeMismatch,
  Singular,
  Overflow,
  InvalidConfig,
  UnsupportedBlocks,
  DegenerateBlock,
  NotInUniverse,
  NoLabel,
  NotClosed,
  CertificationFailed,
  LemmaMismatch,
  NotInPD,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; the code tells callers what failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace superpar
