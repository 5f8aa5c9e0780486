#include "miquel/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "miquel/error.hpp"

namespace miquel {

namespace {

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

double relative_gap(Complex a, Complex b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

bool is_even(const LatticePoint& p) { return ((p.x + p.y + p.z) % 2 + 2) % 2 == 0; }

bool Window::contains(const LatticePoint& p) const {
  return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max && p.z >= z_min && p.z <= z_max;
}

void OctahedralPatch::set(const LatticePoint& p, const ExtendedComplex& value) {
  if (!is_even(p)) throw Error(ErrorCode::InvalidInput, "odd lattice points carry no value");
  if (!window_.contains(p)) throw Error(ErrorCode::InvalidInput, "lattice point outside the window");
  values_[p] = value;
}

std::optional<ExtendedComplex> OctahedralPatch::get(const LatticePoint& p) const {
  auto it = values_.find(p);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

OctahedralPatch propagate_octahedral(const OctahedralPatch& patch, int target_level) {
  if (patch.values().empty()) throw Error(ErrorCode::InvalidInput, "empty Cauchy data");
  int top = patch.values().begin()->first.z;
  for (const auto& [p, v] : patch.values()) top = std::max(top, p.z);
  OctahedralPatch out = patch;
  out.extend_to(target_level);
  const Window& w = out.window();
  for (int level = top + 1; level <= target_level; ++level) {
    int filled = 0;
    for (int x = w.x_min; x <= w.x_max; ++x) {
      for (int y = w.y_min; y <= w.y_max; ++y) {
        const LatticePoint p{x, y, level};
        if (!is_even(p) || out.get(p)) continue;
        const auto right = out.get({x + 1, y, level - 1});
        const auto up = out.get({x, y + 1, level - 1});
        const auto left = out.get({x - 1, y, level - 1});
        const auto down = out.get({x, y - 1, level - 1});
        const auto below = out.get({x, y, level - 2});
        if (!right || !up || !left || !down || !below) continue;
        try {
          out.set(p, mobius_mutation(*right, *up, *left, *down)(*below));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::ConsecutiveCoincidence && e.code() != ErrorCode::DegenerateMap) throw;
          throw Error(ErrorCode::StencilDegenerate, "stencil at (" + std::to_string(x) + "," + std::to_string(y) +
                                                        "," + std::to_string(level) + "): " + e.what());
        }
        ++filled;
      }
    }
    if (filled == 0) {
      throw Error(ErrorCode::WindowExhausted, "no stencil fits at level " + std::to_string(level));
    }
  }
  return out;
}

std::optional<Octahedron> octahedron_at(const OctahedralPatch& patch, const LatticePoint& c) {
  if (is_even(c)) throw Error(ErrorCode::InvalidInput, "octahedra are centred at odd points");
  const auto a = patch.get({c.x, c.y, c.z - 1});
  const auto a2 = patch.get({c.x, c.y, c.z + 1});
  const auto b = patch.get({c.x + 1, c.y, c.z});
  const auto b2 = patch.get({c.x - 1, c.y, c.z});
  const auto cc = patch.get({c.x, c.y + 1, c.z});
  const auto c2 = patch.get({c.x, c.y - 1, c.z});
  if (!a || !a2 || !b || !b2 || !cc || !c2) return std::nullopt;
  return Octahedron{*a, *a2, *b, *b2, *cc, *c2};
}

DirectionStarRatios direction_star_ratios(const Octahedron& o) {
  DirectionStarRatios r;
  r.sr1 = star_ratio(o.a, o.b, o.c, o.b_opposite, o.c_opposite);
  r.sr2 = star_ratio(o.c, o.a, o.b, o.a_opposite, o.b_opposite);
  r.sr3 = star_ratio(o.b, o.c, o.a, o.c_opposite, o.a_opposite);
  if (r.sr1.is_infinite() || r.sr2.is_infinite() || r.sr3.is_infinite()) {
    r.relation_residual = r.product_residual = std::numeric_limits<double>::infinity();
    return r;
  }
  const Complex s1 = r.sr1.value();
  const Complex s2 = r.sr2.value();
  const Complex s3 = r.sr3.value();
  r.relation_residual = std::max(relative_gap(s2, -1.0 / (1.0 + s1)), relative_gap(s3, -(1.0 + 1.0 / s1)));
  r.product_residual = std::abs(s1 * s2 * s3 - 1.0);
  return r;
}

TorusPatternState make_torus_state(CirclePattern pattern) {
  auto classes = face_two_coloring(pattern.graph());
  return TorusPatternState{std::move(pattern), std::move(classes), 0};
}

namespace {

// Renames vertices of `moved` onto vertices of `original` with the same incident edges.
CirclePattern relabel_like(const SurfaceGraph& original, const CirclePattern& moved) {
  const SurfaceGraph& g = moved.graph();
  std::map<std::vector<EdgeId>, VertexId> by_edges;
  for (const auto& [id, v] : original.vertices()) {
    auto edges = original.incident_edges(id);
    std::sort(edges.begin(), edges.end());
    by_edges.emplace(std::move(edges), id);
  }
  std::map<VertexId, VertexId> rename;
  std::set<VertexId> targets;
  for (const auto& [id, v] : g.vertices()) {
    auto edges = g.incident_edges(id);
    std::sort(edges.begin(), edges.end());
    auto it = by_edges.find(edges);
    if (it == by_edges.end() || !targets.insert(it->second).second) return moved;
    rename.emplace(id, it->second);
  }
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Face> faces;
  std::map<VertexId, ExtendedComplex> points;
  for (const auto& [id, v] : g.vertices()) {
    vertices.push_back({rename.at(id), v.color});
    points.emplace(rename.at(id), moved.vertex_point(id));
  }
  for (const auto& [id, e] : g.edges()) edges.push_back({id, rename.at(e.minus), rename.at(e.plus)});
  for (const auto& [id, f] : g.faces()) faces.push_back(f);
  SurfaceGraph relabelled(g.surface(), std::move(vertices), std::move(edges), std::move(faces));
  return CirclePattern(FaceDrawing(std::move(relabelled), moved.centers().points(), moved.periods()),
                       std::move(points));
}

}  // namespace

TorusPatternState miquel_dynamics_step(const TorusPatternState& s, const std::vector<FaceId>& order) {
  std::vector<FaceId> moving;
  for (const auto& [f, c] : s.face_class) {
    if (c == s.step_parity) moving.push_back(f);
  }
  if (!order.empty()) {
    std::vector<FaceId> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != moving) throw Error(ErrorCode::InvalidInput, "move order is not a permutation of the moving class");
    moving = order;
  }
  CirclePattern p = s.pattern;
  for (FaceId f : moving) p = miquel_move(p, f);
  return TorusPatternState{relabel_like(s.pattern.graph(), p), s.face_class, 1 - s.step_parity};
}

void write_slice(const TorusPatternState& s, int rows, int cols, int base_level, OctahedralPatch& patch) {
  const Window& w = patch.window();
  const Periods& per = s.pattern.periods();
  for (int x = w.x_min; x <= w.x_max; ++x) {
    for (int y = w.y_min; y <= w.y_max; ++y) {
      const int j = ((x % cols) + cols) % cols;
      const int i = ((y % rows) + rows) % rows;
      const FaceId f{static_cast<std::uint32_t>(i * cols + j)};
      const int level = s.face_class.at(f) == s.step_parity ? base_level : base_level + 1;
      const LatticePoint p{x, y, level};
      if (!is_even(p)) throw Error(ErrorCode::InvalidInput, "slice level has the wrong parity");
      if (!w.contains(p)) continue;
      const Offset lift{floor_div(x, cols), floor_div(y, rows)};
      patch.set(p, translate(s.pattern.centers().at(f), per.lift(lift)));
    }
  }
}

}  // namespace miquel
