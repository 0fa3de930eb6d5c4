#include "eja/error.hpp"

namespace eja {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kAlgebraMismatch: return "ALGEBRA_MISMATCH";
    case ErrorCode::kInvalidFrame: return "INVALID_FRAME";
    case ErrorCode::kSpinDegenerate: return "SPIN_DEGENERATE";
    case ErrorCode::kXNotInCone: return "X_NOT_IN_CONE";
    case ErrorCode::kDiagonalNotZero: return "DIAGONAL_NOT_ZERO";
    case ErrorCode::kLengthMismatch: return "LENGTH_MISMATCH";
    case ErrorCode::kNotMajorized: return "NOT_MAJORIZED";
    case ErrorCode::kNotDoublyStochastic: return "NOT_DOUBLY_STOCHASTIC";
    case ErrorCode::kUnsupportedAlgebra: return "UNSUPPORTED_ALGEBRA";
    case ErrorCode::kNotCorrelationMatrix: return "NOT_CORRELATION_MATRIX";
    case ErrorCode::kSizeMismatch: return "SIZE_MISMATCH";
    case ErrorCode::kFrameNotFixed: return "FRAME_NOT_FIXED";
    case ErrorCode::kNotSimple: return "NOT_SIMPLE";
    case ErrorCode::kNotAutomorphism: return "NOT_AUTOMORPHISM";
    case ErrorCode::kDegenerateSpectrum: return "DEGENERATE_SPECTRUM";
    case ErrorCode::kPNotPositive: return "P_NOT_POSITIVE";
    case ErrorCode::kPositivityUnknown: return "POSITIVITY_UNKNOWN";
    case ErrorCode::kTheoremViolation: return "THEOREM_VIOLATION";
    case ErrorCode::kDivergence: return "DIVERGENCE";
    case ErrorCode::kRankTooLarge: return "RANK_TOO_LARGE";
    case ErrorCode::kInfeasible: return "INFEASIBLE";
    case ErrorCode::kUnbounded: return "UNBOUNDED";
    case ErrorCode::kNumericalStall: return "NUMERICAL_STALL";
    case ErrorCode::kParseError: return "PARSE_ERROR";
  }
  return "UNKNOWN";
}

}  // namespace eja
