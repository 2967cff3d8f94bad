#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace npf {

enum class ErrorCode {
  InvalidArgument,
  GridMismatch,
  NonNegligibleImaginaryPart,
  ZeroReference,
  HorizonTooLarge,
  DomainViolation,
  NoRoot,
  InvalidLambda,
  PicardDiverged,
  FixedPointDiverged,
  InadmissibleState,
  DimensionMismatch,
  NotConverged,
  TimeMismatch,
  FormatError,
  ChecksumMismatch,
  IoError,
  ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Library-wide exception. Every failure carries a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace npf
