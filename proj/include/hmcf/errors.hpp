#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hmcf {

enum class ErrorCode {
  IndexOutOfRange,
  CharacteristicPoint,
  KindMismatch,
  SupportUnresolved,
  StabilityViolation,
  NoTripleRoot,
  NonConvergence,
  WeightBlowup,
  SolvabilityViolated,
  ResolutionTooCoarse,
  BracketViolated,
  OutsideChart,
  InterpolationOutOfDomain,
  Extinct,
  NoZeroSet,
  EmptyCurve,
  InvalidArgument,
  Config,
  Io,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Every failure surfaced by the library carries one of the codes above so the
/// CLI can map it to an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Usage and configuration problems, as opposed to numerical failures.
  bool is_usage() const noexcept { return code_ == ErrorCode::Config || code_ == ErrorCode::InvalidArgument; }

 private:
  ErrorCode code_;
};

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) throw Error(code, what);
}

}  // namespace hmcf
