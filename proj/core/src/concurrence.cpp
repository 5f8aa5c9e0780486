#include "concurrence.hpp"

#include <limits>
#include <string>

namespace miquel::internal {

ExtendedComplex common_point(std::span<const Circle> circles, std::span<const SharedPoint> shared, double tol,
                             ErrorCode failure) {
  ExtendedComplex best;
  double best_fit = std::numeric_limits<double>::infinity();
  for (const auto& s : shared) {
    ExtendedComplex candidate;
    try {
      candidate = second_intersection(circles[s.i], circles[s.j], s.known);
    } catch (const Error&) {
      continue;
    }
    double fit = 0.0;
    for (const auto& c : circles) fit = std::max(fit, c.residual(candidate));
    if (fit < best_fit) {
      best_fit = fit;
      best = candidate;
    }
  }
  if (!(best_fit <= tol)) {
    throw Error(failure, "circles miss a common point (relative residual " + std::to_string(best_fit) + ")");
  }
  return best;
}

}  // namespace miquel::internal
