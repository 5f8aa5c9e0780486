#include "miquel/error.hpp"

namespace miquel {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IndeterminateRatio: return "IndeterminateRatio";
    case ErrorCode::ConsecutiveCoincidence: return "ConsecutiveCoincidence";
    case ErrorCode::DegenerateMap: return "DegenerateMap";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::IdenticalCircles: return "IdenticalCircles";
    case ErrorCode::CoincidentAnchors: return "CoincidentAnchors";
    case ErrorCode::OddDimensions: return "OddDimensions";
    case ErrorCode::NotAValidQuad: return "NotAValidQuad";
    case ErrorCode::ResultNotInObs: return "ResultNotInObs";
    case ErrorCode::InvalidFace: return "InvalidFace";
    case ErrorCode::NonRealStarRatios: return "NonRealStarRatios";
    case ErrorCode::MonodromyFailure: return "MonodromyFailure";
    case ErrorCode::DegenerateReflectionLine: return "DegenerateReflectionLine";
    case ErrorCode::CollinearCenters: return "CollinearCenters";
    case ErrorCode::NumericalTangencyAmbiguity: return "NumericalTangencyAmbiguity";
    case ErrorCode::ConcyclicDegenerate: return "ConcyclicDegenerate";
    case ErrorCode::ConstructionFailure: return "ConstructionFailure";
    case ErrorCode::TangentAtBase: return "TangentAtBase";
    case ErrorCode::ConcurrenceFailure: return "ConcurrenceFailure";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::WeightMismatchOutsideN: return "WeightMismatchOutsideN";
    case ErrorCode::CoincidentCenters: return "CoincidentCenters";
    case ErrorCode::InfiniteCenter: return "InfiniteCenter";
    case ErrorCode::StencilDegenerate: return "StencilDegenerate";
    case ErrorCode::WindowExhausted: return "WindowExhausted";
    case ErrorCode::DegenerateRow: return "DegenerateRow";
  }
  return "Unknown";
}

bool is_numeric_degeneracy(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::IndeterminateRatio:
    case ErrorCode::ConsecutiveCoincidence:
    case ErrorCode::DegenerateMap:
    case ErrorCode::CoincidentPoints:
    case ErrorCode::IdenticalCircles:
    case ErrorCode::CoincidentAnchors:
    case ErrorCode::NonRealStarRatios:
    case ErrorCode::MonodromyFailure:
    case ErrorCode::DegenerateReflectionLine:
    case ErrorCode::CollinearCenters:
    case ErrorCode::NumericalTangencyAmbiguity:
    case ErrorCode::ConcyclicDegenerate:
    case ErrorCode::ConstructionFailure:
    case ErrorCode::TangentAtBase:
    case ErrorCode::ConcurrenceFailure:
    case ErrorCode::CoincidentCenters:
    case ErrorCode::InfiniteCenter:
    case ErrorCode::StencilDegenerate:
    case ErrorCode::DegenerateRow:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace miquel
