#include "hmcf/errors.hpp"

namespace hmcf {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::CharacteristicPoint: return "CharacteristicPoint";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::SupportUnresolved: return "SupportUnresolved";
    case ErrorCode::StabilityViolation: return "StabilityViolation";
    case ErrorCode::NoTripleRoot: return "NoTripleRoot";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::WeightBlowup: return "WeightBlowup";
    case ErrorCode::SolvabilityViolated: return "SolvabilityViolated";
    case ErrorCode::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorCode::BracketViolated: return "BracketViolated";
    case ErrorCode::OutsideChart: return "OutsideChart";
    case ErrorCode::InterpolationOutOfDomain: return "InterpolationOutOfDomain";
    case ErrorCode::Extinct: return "Extinct";
    case ErrorCode::NoZeroSet: return "NoZeroSet";
    case ErrorCode::EmptyCurve: return "EmptyCurve";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Config: return "ConfigError";
    case ErrorCode::Io: return "IoError";
  }
  return "Unknown";
}

}  // namespace hmcf
