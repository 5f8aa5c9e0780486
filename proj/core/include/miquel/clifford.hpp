#pragma once

#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "miquel/geometry.hpp"

namespace miquel {

// Subset of {1..n} as a bit mask: element k is bit k-1.
using Subset = unsigned;

Subset subset(std::initializer_list<int> elements);
int subset_size(Subset s);
std::string subset_label(Subset s);  // "" for the empty set, "12" for {1,2}

struct CliffordConfiguration {
  int n = 4;
  std::map<Subset, ExtendedComplex> points;   // even subsets
  std::map<Subset, Circle> circles;           // odd subsets
  std::map<Subset, ExtendedComplex> centers;  // odd subsets

  // V_I for even I, M_I for odd I.
  ExtendedComplex label(Subset s) const;
  Subset full() const { return (1u << n) - 1u; }
};

// Circles through a common base point, in cyclic order (3 or 4 of them).
// Consecutive circles must meet again away from the base; for four circles the
// non-consecutive pairs may be tangent there, giving a double point at the base.
// Three circles may have one tangent pair.
CliffordConfiguration build_clifford(const ExtendedComplex& base, const std::vector<Circle>& circles);
CliffordConfiguration build_c4(const ExtendedComplex& base, const std::vector<Circle>& circles);
CliffordConfiguration build_c3(const ExtendedComplex& base, const std::vector<Circle>& circles);

// Largest relative distance of a point from a circle it should lie on.
double incidence_residual(const CliffordConfiguration& cfg);

struct ShiftReport {
  double point_shift = 0.0;
  double circle_shift = 0.0;
  double vertex_star_ratio = 0.0;
  double center_star_ratio = 0.0;
  double map_independence = 0.0;
  int skipped = 0;  // star ratios that were indeterminate on both sides

  double max() const;
};

ShiftReport verify_shift_identities(const CliffordConfiguration& cfg);

struct CrossRatioReport {
  double opposite_faces = 0.0;
  double tetrahedra = 0.0;  // n = 4 only
  double menelaus = 0.0;    // n = 4 only: |m + 1| for both multi-ratios
  int checked = 0;
  int skipped = 0;

  double max() const;
};

CrossRatioReport verify_cross_ratio_system(const CliffordConfiguration& cfg);

// Four random circles through a random base point, cyclically ordered around it.
struct PencilSample {
  ExtendedComplex base;
  std::vector<Circle> circles;
};
PencilSample random_pencil(std::uint64_t seed, int count = 4);

}  // namespace miquel
