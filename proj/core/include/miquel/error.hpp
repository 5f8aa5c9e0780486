#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace miquel {

enum class ErrorCode {
  InvalidInput,
  ParseError,
  IndeterminateRatio,
  ConsecutiveCoincidence,
  DegenerateMap,
  CoincidentPoints,
  IdenticalCircles,
  CoincidentAnchors,
  OddDimensions,
  NotAValidQuad,
  ResultNotInObs,
  InvalidFace,
  NonRealStarRatios,
  MonodromyFailure,
  DegenerateReflectionLine,
  CollinearCenters,
  NumericalTangencyAmbiguity,
  ConcyclicDegenerate,
  ConstructionFailure,
  TangentAtBase,
  ConcurrenceFailure,
  TooLarge,
  WeightMismatchOutsideN,
  CoincidentCenters,
  InfiniteCenter,
  StencilDegenerate,
  WindowExhausted,
  DegenerateRow,
};

std::string_view to_string(ErrorCode code) noexcept;

// True for failures caused by degenerate numeric data rather than malformed input.
bool is_numeric_degeneracy(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace miquel
