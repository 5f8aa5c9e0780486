#pragma once

#include <map>
#include <string>
#include <vector>

#include "miquel/geometry.hpp"
#include "miquel/surface_graph.hpp"

namespace miquel {

// The two complex periods of a torus drawing; zero elsewhere.
struct Periods {
  Complex first{0.0, 0.0};
  Complex second{0.0, 0.0};

  Complex lift(Offset o) const { return static_cast<double>(o[0]) * first + static_cast<double>(o[1]) * second; }
  friend bool operator==(const Periods&, const Periods&) = default;
};

// A map from faces to points of the sphere. Each face point lives in the face's
// own frame; neighbours are lifted with the side's neighbour shift.
class FaceDrawing {
 public:
  FaceDrawing(SurfaceGraph graph, std::map<FaceId, ExtendedComplex> points, Periods periods = {});

  const SurfaceGraph& graph() const noexcept { return graph_; }
  const std::map<FaceId, ExtendedComplex>& points() const noexcept { return points_; }
  const Periods& periods() const noexcept { return periods_; }
  ExtendedComplex at(FaceId f) const;
  // Point of the neighbour across `side`, expressed in the frame of the face owning it.
  ExtendedComplex neighbour_point(const FaceSide& side) const;

 private:
  SurfaceGraph graph_;
  std::map<FaceId, ExtendedComplex> points_;
  Periods periods_;
};

class CirclePattern {
 public:
  CirclePattern(FaceDrawing centers, std::map<VertexId, ExtendedComplex> vertices);

  const SurfaceGraph& graph() const noexcept { return centers_.graph(); }
  const FaceDrawing& centers() const noexcept { return centers_; }
  const std::map<VertexId, ExtendedComplex>& vertices() const noexcept { return vertices_; }
  const Periods& periods() const noexcept { return centers_.periods(); }
  ExtendedComplex vertex_point(VertexId v) const;
  // Corner positions of f in f's frame, in boundary order.
  std::vector<ExtendedComplex> face_vertex_points(FaceId f) const;
  // The circle of f: through its corners, centred at its center.
  Circle face_circle(FaceId f) const;

 private:
  FaceDrawing centers_;
  std::map<VertexId, ExtendedComplex> vertices_;
};

// Builds centers as circumcenters of each face's corners.
CirclePattern pattern_from_vertices(SurfaceGraph graph, std::map<VertexId, ExtendedComplex> vertices,
                                    Periods periods = {});

enum class StarRatioClass : std::uint8_t { generic, real, real_positive };
std::string to_string(StarRatioClass c);

struct StarRatioField {
  std::map<FaceId, ExtendedComplex> values;
  std::map<FaceId, StarRatioClass> classes;

  bool all_real_positive() const;
};

StarRatioClass classify_star_ratio(const ExtendedComplex& sr, double tol = kRelativeTol);
// Star ratio of a face against all its neighbours (incoming dual edges on top).
ExtendedComplex face_star_ratio(const FaceDrawing& d, FaceId f);
// Star ratios of every face with a complete star (boundary faces are skipped).
StarRatioField pattern_star_ratios(const FaceDrawing& d);

enum class PatternViolationKind : std::uint8_t {
  MissingPoint,
  NotConcyclic,
  CoincidentVertices,
  CoincidentCenters,
  NonRealStarRatio,
};
std::string to_string(PatternViolationKind kind);

struct PatternViolation {
  PatternViolationKind kind;
  std::string detail;
};

std::vector<PatternViolation> validate_pattern(const CirclePattern& p);

// Reconstructs vertices from centers by successive reflections. On patches,
// patch corners reachable only along the boundary are placed diametrically
// opposite the facing corner of their face.
CirclePattern propagate_from_centers(const FaceDrawing& d, VertexId seed_vertex,
                                     const ExtendedComplex& seed_point);

CirclePattern miquel_move(const CirclePattern& p, FaceId f);
FaceDrawing mobius_mutation_move(const FaceDrawing& d, FaceId f);
ExtendedComplex clifford_point_geometric(const FaceDrawing& d, FaceId f);

// Centers of f's four neighbours lifted into f's frame, in side order.
std::array<ExtendedComplex, 4> neighbour_centers(const FaceDrawing& d, const QuadView& q);

// Regular isoradial pattern: face (i,j) centred at (j+1)+(i+1)i, vertex (i,j) at
// (j+1/2)+(i+1/2)i, radius sqrt(2)/2; torus periods cols and i*rows.
CirclePattern make_regular_torus_pattern(int rows, int cols);
CirclePattern make_regular_patch_pattern(int rows, int cols);

}  // namespace miquel
