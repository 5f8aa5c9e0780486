#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace miquel {

template <class Tag>
struct Id {
  std::uint32_t value = 0;
  friend auto operator<=>(const Id&, const Id&) = default;
};

struct VertexTag {};
struct EdgeTag {};
struct FaceTag {};
using VertexId = Id<VertexTag>;
using EdgeId = Id<EdgeTag>;
using FaceId = Id<FaceTag>;

// Lattice translation in units of the two torus periods; always zero on the sphere and on patches.
using Offset = std::array<int, 2>;

inline Offset operator+(Offset a, Offset b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Offset operator-(Offset a, Offset b) { return {a[0] - b[0], a[1] - b[1]}; }

enum class Color : std::uint8_t { minus, plus };
enum class Surface : std::uint8_t { sphere, torus, plane_patch };

inline Color opposite(Color c) { return c == Color::minus ? Color::plus : Color::minus; }

struct Vertex {
  VertexId id;
  Color color;
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct Edge {
  EdgeId id;
  VertexId minus;
  VertexId plus;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// One step of a face boundary walk. The walk runs counter-clockwise, keeping the
// face on its left. `forward` means the edge is traversed from its minus to its
// plus endpoint. `tail_offset` places the tail vertex in the face's own frame.
struct Dart {
  EdgeId edge;
  bool forward = true;
  Offset tail_offset{0, 0};
  friend bool operator==(const Dart&, const Dart&) = default;
};

struct Face {
  FaceId id;
  std::vector<Dart> cycle;
  friend bool operator==(const Face&, const Face&) = default;
};

enum class DualDirection : std::uint8_t { incoming, outgoing };

// Edge k of a face boundary, seen from the face.
struct FaceSide {
  EdgeId edge;
  std::optional<FaceId> neighbour;  // empty for boundary edges of a patch
  Offset neighbour_shift{0, 0};     // neighbour frame relative to this face's frame
  DualDirection direction = DualDirection::incoming;
};

// Vertex k of a face boundary: the head of side k.
struct Corner {
  VertexId vertex;
  Offset offset{0, 0};
};

// A quadrilateral face with four usable neighbours, indexed so that corner k is
// shared by sides k and k+1 (mod 4).
struct QuadView {
  FaceId face;
  std::array<FaceSide, 4> sides;
  std::array<Corner, 4> corners;
};

enum class ViolationKind : std::uint8_t {
  NotBipartite,
  VertexDegree,
  FaceDegree,
  DualOrientation,
  EulerCharacteristic,
  OffsetMismatch,
  EdgeIncidence,
};

struct GraphViolation {
  ViolationKind kind;
  std::string detail;
};

std::string to_string(ViolationKind kind);
std::string to_string(Surface surface);
Surface surface_from_string(const std::string& name);

// Identifiers that a contraction at (face, side edge) freed; a later split at the
// same place reuses them so that mutation is an exact involution.
struct RetiredIds {
  VertexId vertex;
  EdgeId edge;
  friend bool operator==(const RetiredIds&, const RetiredIds&) = default;
};
using RetiredMap = std::map<std::pair<FaceId, EdgeId>, RetiredIds>;

class SurfaceGraph {
 public:
  // Throws InvalidInput on duplicate or unknown identifiers. Everything else is
  // left to validate_surface_graph. Each face cycle is rotated to start at its
  // dart of smallest edge id, so equal graphs compare equal.
  SurfaceGraph(Surface surface, std::vector<Vertex> vertices, std::vector<Edge> edges,
               std::vector<Face> faces, RetiredMap retired = {});

  Surface surface() const noexcept { return surface_; }
  const std::map<VertexId, Vertex>& vertices() const noexcept { return vertices_; }
  const std::map<EdgeId, Edge>& edges() const noexcept { return edges_; }
  const std::map<FaceId, Face>& faces() const noexcept { return faces_; }
  const RetiredMap& retired() const noexcept { return retired_; }

  const Vertex& vertex(VertexId id) const;
  const Edge& edge(EdgeId id) const;
  const Face& face(FaceId id) const;
  bool has_vertex(VertexId id) const { return vertices_.contains(id); }
  bool has_face(FaceId id) const { return faces_.contains(id); }

  VertexId tail(const Dart& d) const;
  VertexId head(const Dart& d) const;

  std::size_t degree(VertexId v) const;
  const std::vector<EdgeId>& incident_edges(VertexId v) const;
  // Face on the left (edge traversed forward) and on the right (traversed backward).
  std::optional<FaceId> left_face(EdgeId e) const;
  std::optional<FaceId> right_face(EdgeId e) const;
  bool is_boundary_edge(EdgeId e) const;
  bool is_boundary_vertex(VertexId v) const;
  bool is_boundary_face(FaceId f) const;

  std::vector<FaceSide> sides(FaceId f) const;
  std::vector<Corner> corners(FaceId f) const;

  // Darts recorded twice in the same direction; reported by validation.
  const std::vector<std::string>& orientation_conflicts() const noexcept { return conflicts_; }

  // Equality of the combinatorial record; identifier bookkeeping is ignored.
  friend bool operator==(const SurfaceGraph& a, const SurfaceGraph& b) {
    return a.surface_ == b.surface_ && a.vertices_ == b.vertices_ && a.edges_ == b.edges_ &&
           a.faces_ == b.faces_;
  }

 private:
  struct DartLocation {
    FaceId face;
    std::size_t index;
  };
  void build_index();
  std::optional<DartLocation> locate(EdgeId e, bool forward) const;

  Surface surface_;
  std::map<VertexId, Vertex> vertices_;
  std::map<EdgeId, Edge> edges_;
  std::map<FaceId, Face> faces_;
  RetiredMap retired_;
  std::map<EdgeId, std::array<std::optional<DartLocation>, 2>> dart_index_;  // [backward, forward]
  std::map<VertexId, std::vector<EdgeId>> incidence_;
  std::vector<std::string> conflicts_;

  friend SurfaceGraph mutate_at_face(const SurfaceGraph& g, FaceId f);
};

std::vector<GraphViolation> validate_surface_graph(const SurfaceGraph& g);

// Throws NotAValidQuad unless f is a quadrilateral with four distinct sides and
// corners, no side shared with f itself, distinct consecutive neighbours and
// interior corners.
QuadView quad_view(const SurfaceGraph& g, FaceId f);

std::set<EdgeId> edge_neighbourhood(const SurfaceGraph& g, FaceId f);

SurfaceGraph mutate_at_face(const SurfaceGraph& g, FaceId f);

// Vertex (i,j) has id i*cols+j and color + when i+j is even; face (i,j) has id
// i*cols+j and lower-left corner (i,j); horizontal edge (i,j)->(i,j+1) has id
// i*cols+j and vertical edge (i,j)->(i+1,j) has id rows*cols + i*cols+j.
SurfaceGraph build_square_grid_torus(int rows, int cols);
// Finite rows x cols patch on the (rows+1)x(cols+1) vertex grid: vertex (i,j) has id
// i*(cols+1)+j, face (i,j) id i*cols+j, horizontal edge (i,j)->(i,j+1) id i*cols+j,
// vertical edge (i,j)->(i+1,j) id (rows+1)*cols + i*(cols+1)+j.
SurfaceGraph build_square_grid_patch(int rows, int cols);
// A cycle of 2n alternating vertices bounding two faces on the sphere.
SurfaceGraph build_cycle_sphere(int half_length);

// Two-colouring of the dual graph, class 0 containing the smallest face id.
// Throws InvalidInput if the dual is not bipartite.
std::map<FaceId, int> face_two_coloring(const SurfaceGraph& g);

}  // namespace miquel
