#include "npf/error.hpp"

namespace npf {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::NonNegligibleImaginaryPart: return "NonNegligibleImaginaryPart";
    case ErrorCode::ZeroReference: return "ZeroReference";
    case ErrorCode::HorizonTooLarge: return "HorizonTooLarge";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::InvalidLambda: return "InvalidLambda";
    case ErrorCode::PicardDiverged: return "PicardDiverged";
    case ErrorCode::FixedPointDiverged: return "FixedPointDiverged";
    case ErrorCode::InadmissibleState: return "InadmissibleState";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::TimeMismatch: return "TimeMismatch";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace npf
