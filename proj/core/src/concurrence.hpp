#pragma once

#include <cstddef>
#include <span>

#include "miquel/error.hpp"
#include "miquel/geometry.hpp"

namespace miquel::internal {

// A point already known to lie on circles i and j.
struct SharedPoint {
  std::size_t i = 0, j = 0;
  ExtendedComplex known;
};

// Common point of several circles, taken as the second intersection through
// one of the shared points; the candidate with the smallest worst residual
// wins. Throws `failure` when that residual exceeds tol.
ExtendedComplex common_point(std::span<const Circle> circles, std::span<const SharedPoint> shared, double tol,
                             ErrorCode failure);

}  // namespace miquel::internal
