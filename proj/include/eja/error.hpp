#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eja {

enum class ErrorCode {
  kAlgebraMismatch,
  kInvalidFrame,
  kSpinDegenerate,
  kXNotInCone,
  kDiagonalNotZero,
  kLengthMismatch,
  kNotMajorized,
  kNotDoublyStochastic,
  kUnsupportedAlgebra,
  kNotCorrelationMatrix,
  kSizeMismatch,
  kFrameNotFixed,
  kNotSimple,
  kNotAutomorphism,
  kDegenerateSpectrum,
  kPNotPositive,
  kPositivityUnknown,
  kTheoremViolation,
  kDivergence,
  kRankTooLarge,
  kInfeasible,
  kUnbounded,
  kNumericalStall,
  kParseError,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying one of the library's error codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace eja
