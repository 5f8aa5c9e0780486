#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "miquel/circle_pattern.hpp"
#include "miquel/geometry.hpp"

namespace miquel {

struct LatticePoint {
  int x = 0;
  int y = 0;
  int z = 0;
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

bool is_even(const LatticePoint& p);

// Inclusive integer box.
struct Window {
  int x_min = 0, x_max = 0;
  int y_min = 0, y_max = 0;
  int z_min = 0, z_max = 0;
  bool contains(const LatticePoint& p) const;
  friend bool operator==(const Window&, const Window&) = default;
};

class OctahedralPatch {
 public:
  explicit OctahedralPatch(Window window) : window_(window) {}

  const Window& window() const noexcept { return window_; }
  const std::map<LatticePoint, ExtendedComplex>& values() const noexcept { return values_; }
  // Throws InvalidInput for odd points or points outside the window.
  void set(const LatticePoint& p, const ExtendedComplex& value);
  std::optional<ExtendedComplex> get(const LatticePoint& p) const;
  void extend_to(int z_max) { window_.z_max = std::max(window_.z_max, z_max); }

 private:
  Window window_;
  std::map<LatticePoint, ExtendedComplex> values_;
};

// Fills every level above the data up to target_level using
// z(x,y,z+1) = mob(z(x+1,y,z), z(x,y+1,z), z(x-1,y,z), z(x,y-1,z))(z(x,y,z-1)).
OctahedralPatch propagate_octahedral(const OctahedralPatch& patch, int target_level);

// The six vertices around an odd lattice point: a below, a_opposite above, and
// the equatorial pairs (b, b_opposite) along x and (c, c_opposite) along y.
struct Octahedron {
  ExtendedComplex a, a_opposite;
  ExtendedComplex b, b_opposite;
  ExtendedComplex c, c_opposite;
};

std::optional<Octahedron> octahedron_at(const OctahedralPatch& patch, const LatticePoint& center);

struct DirectionStarRatios {
  ExtendedComplex sr1;  // sr(a; b, c, b', c')
  ExtendedComplex sr2;  // sr(c; a, b, a', b')
  ExtendedComplex sr3;  // sr(b; c, a, c', a')
  double relation_residual = 0.0;  // deviation from sr2 = -1/(1+sr1), sr3 = -(1+1/sr1)
  double product_residual = 0.0;   // |sr1 sr2 sr3 - 1|
};

DirectionStarRatios direction_star_ratios(const Octahedron& o);

struct TorusPatternState {
  CirclePattern pattern;
  std::map<FaceId, int> face_class;  // dual two-colouring
  int step_parity = 0;               // class that moves next
};

TorusPatternState make_torus_state(CirclePattern pattern);
// Moves every face of the current class in the given order (ascending ids by
// default), relabels vertices back onto the identifiers of the vertices they
// replace, and flips the parity.
TorusPatternState miquel_dynamics_step(const TorusPatternState& s, const std::vector<FaceId>& order = {});

struct GeneratorOptions {
  Surface surface = Surface::torus;
  double spread = 0.25;  // relative width of the sampling interval around the isoradial value
  bool kasteleyn = true;
  int max_retries = 64;
};

CirclePattern generate_kasteleyn_cauchy_data(int rows, int cols, std::uint64_t seed,
                                             const GeneratorOptions& options = {});

// Level-k slice of a square-grid torus state on the universal cover: face (i,j)
// shifted by (a,b) periods sits at (j + a*cols, i + b*rows, level) where level is
// base_level for the class that moves next and base_level+1 for the other.
void write_slice(const TorusPatternState& s, int rows, int cols, int base_level, OctahedralPatch& patch);

}  // namespace miquel
