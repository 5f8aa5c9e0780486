#include "miquel/circle_pattern.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "miquel/error.hpp"
#include "concurrence.hpp"

namespace miquel {

namespace {

std::string id_str(std::uint32_t v) { return std::to_string(v); }

QuadView valid_face(const SurfaceGraph& g, FaceId f) {
  try {
    return quad_view(g, f);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotAValidQuad) throw;
    throw Error(ErrorCode::InvalidFace, e.what());
  }
}

double drawing_scale(const FaceDrawing& d) {
  double s = 1.0;
  for (const auto& [f, p] : d.points()) {
    if (p.is_finite()) s = std::max(s, std::abs(p.value()));
  }
  s = std::max({s, std::abs(d.periods().first), std::abs(d.periods().second)});
  return s;
}

// True when all finite points lie on one line (infinity lies on every line).
bool all_collinear(const std::vector<ExtendedComplex>& pts) {
  std::vector<Complex> finite;
  for (const auto& p : pts) {
    if (p.is_finite()) finite.push_back(p.value());
  }
  double best = 0.0;
  Complex a, b;
  for (std::size_t i = 0; i < finite.size(); ++i) {
    for (std::size_t j = i + 1; j < finite.size(); ++j) {
      const double dist = std::abs(finite[i] - finite[j]);
      if (dist > best) {
        best = dist;
        a = finite[i];
        b = finite[j];
      }
    }
  }
  if (best == 0.0) return true;
  const Complex u = (b - a) / best;
  for (const auto& p : finite) {
    const Complex w = p - a;
    if (std::abs(u.real() * w.imag() - u.imag() * w.real()) > kRelativeTol * best) return false;
  }
  return true;
}

}  // namespace

FaceDrawing::FaceDrawing(SurfaceGraph graph, std::map<FaceId, ExtendedComplex> points, Periods periods)
    : graph_(std::move(graph)), points_(std::move(points)), periods_(periods) {
  for (const auto& [f, face] : graph_.faces()) {
    if (!points_.contains(f)) throw Error(ErrorCode::InvalidInput, "no point for face " + id_str(f.value));
  }
  for (const auto& [f, p] : points_) {
    if (!graph_.has_face(f)) throw Error(ErrorCode::InvalidInput, "point for unknown face " + id_str(f.value));
  }
}

ExtendedComplex FaceDrawing::at(FaceId f) const {
  auto it = points_.find(f);
  if (it == points_.end()) throw Error(ErrorCode::InvalidInput, "no point for face " + id_str(f.value));
  return it->second;
}

ExtendedComplex FaceDrawing::neighbour_point(const FaceSide& side) const {
  if (!side.neighbour) throw Error(ErrorCode::InvalidInput, "boundary side has no neighbour");
  return translate(at(*side.neighbour), periods_.lift(side.neighbour_shift));
}

CirclePattern::CirclePattern(FaceDrawing centers, std::map<VertexId, ExtendedComplex> vertices)
    : centers_(std::move(centers)), vertices_(std::move(vertices)) {
  for (const auto& [v, vertex] : graph().vertices()) {
    if (!vertices_.contains(v)) throw Error(ErrorCode::InvalidInput, "no point for vertex " + id_str(v.value));
  }
  for (const auto& [v, p] : vertices_) {
    if (!graph().has_vertex(v)) throw Error(ErrorCode::InvalidInput, "point for unknown vertex " + id_str(v.value));
  }
}

ExtendedComplex CirclePattern::vertex_point(VertexId v) const {
  auto it = vertices_.find(v);
  if (it == vertices_.end()) throw Error(ErrorCode::InvalidInput, "no point for vertex " + id_str(v.value));
  return it->second;
}

std::vector<ExtendedComplex> CirclePattern::face_vertex_points(FaceId f) const {
  std::vector<ExtendedComplex> out;
  for (const auto& c : graph().corners(f)) {
    out.push_back(translate(vertex_point(c.vertex), periods().lift(c.offset)));
  }
  return out;
}

Circle CirclePattern::face_circle(FaceId f) const {
  const ExtendedComplex m = centers_.at(f);
  const auto pts = face_vertex_points(f);
  if (m.is_finite()) {
    for (const auto& p : pts) {
      if (p.is_finite()) return Circle::make_circle(m.value(), std::abs(p.value() - m.value()));
    }
    throw Error(ErrorCode::InvalidInput, "face " + id_str(f.value) + " has no finite vertex");
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i].is_finite() && pts[j].is_finite() && !coincident(pts[i], pts[j])) {
        return Circle::make_line(pts[i].value(), pts[j].value());
      }
    }
  }
  throw Error(ErrorCode::InvalidInput, "face " + id_str(f.value) + " line is not determined");
}

CirclePattern pattern_from_vertices(SurfaceGraph graph, std::map<VertexId, ExtendedComplex> vertices,
                                    Periods periods) {
  std::map<FaceId, ExtendedComplex> centers;
  for (const auto& [fid, face] : graph.faces()) {
    std::vector<ExtendedComplex> distinct;
    for (const auto& c : graph.corners(fid)) {
      const auto p = translate(vertices.at(c.vertex), periods.lift(c.offset));
      if (std::none_of(distinct.begin(), distinct.end(), [&](const auto& q) { return coincident(p, q); })) {
        distinct.push_back(p);
      }
    }
    if (distinct.size() < 3) {
      throw Error(ErrorCode::InvalidInput, "face " + id_str(fid.value) + " has fewer than three distinct vertices");
    }
    centers.emplace(fid, circle_center_of(circumcircle(distinct[0], distinct[1], distinct[2])));
  }
  FaceDrawing d(std::move(graph), std::move(centers), periods);
  return CirclePattern(std::move(d), std::move(vertices));
}

std::string to_string(StarRatioClass c) {
  switch (c) {
    case StarRatioClass::generic: return "generic";
    case StarRatioClass::real: return "real";
    case StarRatioClass::real_positive: return "real-positive";
  }
  return "unknown";
}

bool StarRatioField::all_real_positive() const {
  return std::all_of(classes.begin(), classes.end(),
                     [](const auto& kv) { return kv.second == StarRatioClass::real_positive; });
}

StarRatioClass classify_star_ratio(const ExtendedComplex& sr, double tol) {
  if (sr.is_infinite()) return StarRatioClass::generic;
  const Complex v = sr.value();
  if (std::abs(v.imag()) > tol * std::abs(v)) return StarRatioClass::generic;
  return v.real() > 0.0 ? StarRatioClass::real_positive : StarRatioClass::real;
}

ExtendedComplex face_star_ratio(const FaceDrawing& d, FaceId f) {
  std::vector<ExtendedComplex> in;
  std::vector<ExtendedComplex> out;
  for (const auto& s : d.graph().sides(f)) {
    (s.direction == DualDirection::incoming ? in : out).push_back(d.neighbour_point(s));
  }
  return star_ratio(d.at(f), in, out);
}

StarRatioField pattern_star_ratios(const FaceDrawing& d) {
  StarRatioField field;
  for (const auto& [fid, face] : d.graph().faces()) {
    if (d.graph().is_boundary_face(fid)) continue;
    const ExtendedComplex sr = face_star_ratio(d, fid);
    field.values.emplace(fid, sr);
    field.classes.emplace(fid, classify_star_ratio(sr));
  }
  return field;
}

std::string to_string(PatternViolationKind kind) {
  switch (kind) {
    case PatternViolationKind::MissingPoint: return "MissingPoint";
    case PatternViolationKind::NotConcyclic: return "NotConcyclic";
    case PatternViolationKind::CoincidentVertices: return "CoincidentVertices";
    case PatternViolationKind::CoincidentCenters: return "CoincidentCenters";
    case PatternViolationKind::NonRealStarRatio: return "NonRealStarRatio";
  }
  return "Unknown";
}

std::vector<PatternViolation> validate_pattern(const CirclePattern& p) {
  std::vector<PatternViolation> out;
  const SurfaceGraph& g = p.graph();
  for (const auto& [fid, face] : g.faces()) {
    const ExtendedComplex m = p.centers().at(fid);
    const auto pts = p.face_vertex_points(fid);
    bool ok = true;
    if (m.is_finite()) {
      double r = -1.0;
      for (const auto& q : pts) {
        if (q.is_infinite()) {
          ok = false;
          break;
        }
        const double dist = std::abs(q.value() - m.value());
        if (r < 0.0) r = dist;
        if (!(r > 0.0) || std::abs(dist - r) > kRelativeTol * r) ok = false;
      }
    } else {
      ok = all_collinear(pts);
    }
    if (!ok) {
      out.push_back({PatternViolationKind::NotConcyclic,
                     "face " + id_str(fid.value) + " vertices are not on a circle about its center"});
    }
    const std::size_t n = face.cycle.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (!face.cycle[i].forward) continue;
      if (coincident(pts[(i + n - 1) % n], pts[i])) {
        out.push_back({PatternViolationKind::CoincidentVertices,
                       "edge " + id_str(face.cycle[i].edge.value) + " joins coincident points"});
      }
    }
    for (const auto& s : g.sides(fid)) {
      if (!s.neighbour || s.direction != DualDirection::outgoing) continue;
      if (coincident(m, p.centers().neighbour_point(s))) {
        out.push_back({PatternViolationKind::CoincidentCenters,
                       "dual edge across " + id_str(s.edge.value) + " joins coincident centers"});
      }
    }
  }
  for (const auto& [fid, face] : g.faces()) {
    if (g.is_boundary_face(fid)) continue;
    try {
      const auto sr = face_star_ratio(p.centers(), fid);
      if (classify_star_ratio(sr) == StarRatioClass::generic) {
        out.push_back({PatternViolationKind::NonRealStarRatio,
                       "face " + id_str(fid.value) + " has a non-real star ratio"});
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::IndeterminateRatio) throw;
      out.push_back({PatternViolationKind::NonRealStarRatio,
                     "face " + id_str(fid.value) + " star ratio is indeterminate"});
    }
  }
  return out;
}

CirclePattern propagate_from_centers(const FaceDrawing& d, VertexId seed_vertex,
                                     const ExtendedComplex& seed_point) {
  const SurfaceGraph& g = d.graph();
  if (!g.has_vertex(seed_vertex)) throw Error(ErrorCode::InvalidInput, "unknown seed vertex");
  for (const auto& [fid, sr] : pattern_star_ratios(d).classes) {
    if (sr == StarRatioClass::generic) {
      throw Error(ErrorCode::NonRealStarRatios, "face " + id_str(fid.value) + " has a non-real star ratio");
    }
  }

  // Per interior edge: left face, the right center in the left frame, and the
  // offsets of its minus and plus endpoints in the left frame.
  struct Mirror {
    ExtendedComplex a, b;
    Offset minus_offset, plus_offset;
  };
  std::map<EdgeId, Mirror> mirrors;
  for (const auto& [fid, face] : g.faces()) {
    const auto sides = g.sides(fid);
    for (std::size_t i = 0; i < face.cycle.size(); ++i) {
      const Dart& dart = face.cycle[i];
      if (!dart.forward || !sides[i].neighbour) continue;
      Mirror m{d.at(fid), d.neighbour_point(sides[i]), dart.tail_offset,
               face.cycle[(i + 1) % face.cycle.size()].tail_offset};
      if (m.a.is_infinite() || m.b.is_infinite() || coincident(m.a, m.b)) {
        throw Error(ErrorCode::DegenerateReflectionLine,
                    "centers across edge " + id_str(dart.edge.value) + " do not span a line");
      }
      mirrors.emplace(dart.edge, m);
    }
  }
  const double scale = drawing_scale(d);
  const Periods& per = d.periods();
  std::map<VertexId, ExtendedComplex> z{{seed_vertex, seed_point}};
  std::deque<VertexId> queue{seed_vertex};
  auto isolated = [&](VertexId v) {
    const auto& es = g.incident_edges(v);
    return std::none_of(es.begin(), es.end(), [&](EdgeId e) { return mirrors.contains(e); });
  };
  // Reflections across interior edges, then antipodes for patch corners, which
  // touch only boundary edges; a corner seed reaches the rest through its antipode.
  for (bool progress = true; progress;) {
    while (!queue.empty()) {
      const VertexId v = queue.front();
      queue.pop_front();
      for (EdgeId eid : g.incident_edges(v)) {
        auto mit = mirrors.find(eid);
        if (mit == mirrors.end()) continue;
        const Mirror& m = mit->second;
        const Edge& e = g.edge(eid);
        const bool from_minus = e.minus == v;
        const VertexId other = from_minus ? e.plus : e.minus;
        const Offset here = from_minus ? m.minus_offset : m.plus_offset;
        const Offset there = from_minus ? m.plus_offset : m.minus_offset;
        const auto image = reflect_in_line(translate(z.at(v), per.lift(here)), m.a, m.b);
        const auto value = translate(image, -per.lift(there));
        auto it = z.find(other);
        if (it == z.end()) {
          z.emplace(other, value);
          queue.push_back(other);
        } else {
          const bool closes = it->second.is_infinite() || value.is_infinite()
                                  ? it->second.is_infinite() == value.is_infinite()
                                  : std::abs(it->second.value() - value.value()) <= kRelativeTol * scale;
          if (!closes) {
            throw Error(ErrorCode::MonodromyFailure,
                        "reflections around vertex " + id_str(other.value) + " do not close");
          }
        }
      }
    }
    progress = false;
    if (z.size() == g.vertices().size()) break;
    for (const auto& [fid, face] : g.faces()) {
      const auto corners = g.corners(fid);
      const std::size_t n = corners.size();
      const ExtendedComplex m = d.at(fid);
      if (m.is_infinite() || n % 2 != 0) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (z.contains(corners[k].vertex)) continue;
        const Corner& opp = corners[(k + n / 2) % n];
        if (!isolated(corners[k].vertex) && !isolated(opp.vertex)) continue;
        auto it = z.find(opp.vertex);
        if (it == z.end() || it->second.is_infinite()) continue;
        const Complex p = it->second.value() + per.lift(opp.offset);
        const Complex q = 2.0 * m.value() - p;
        z.emplace(corners[k].vertex, ExtendedComplex(q - per.lift(corners[k].offset)));
        queue.push_back(corners[k].vertex);
        progress = true;
      }
    }
  }
  if (z.size() < g.vertices().size()) {
    throw Error(ErrorCode::MonodromyFailure, "some vertices are unreachable from the seed");
  }
  return CirclePattern(d, std::move(z));
}

std::array<ExtendedComplex, 4> neighbour_centers(const FaceDrawing& d, const QuadView& q) {
  std::array<ExtendedComplex, 4> out;
  for (int k = 0; k < 4; ++k) out[k] = d.neighbour_point(q.sides[k]);
  return out;
}

CirclePattern miquel_move(const CirclePattern& p, FaceId f) {
  const SurfaceGraph& g = p.graph();
  const QuadView q = valid_face(g, f);
  const ExtendedComplex m = p.centers().at(f);
  const auto mk = neighbour_centers(p.centers(), q);
  for (int k = 0; k < 4; ++k) {
    if (coincident(mk[k], mk[(k + 1) % 4])) {
      throw Error(ErrorCode::InvalidFace, "consecutive neighbour centers of face " + id_str(f.value) + " coincide");
    }
  }
  if (all_collinear({m, mk[0], mk[1], mk[2], mk[3]})) {
    throw Error(ErrorCode::CollinearCenters, "the five centers at face " + id_str(f.value) + " are collinear");
  }
  const Periods& per = p.periods();
  std::array<ExtendedComplex, 4> corner;
  for (int k = 0; k < 4; ++k) {
    corner[k] = translate(p.vertex_point(q.corners[k].vertex), per.lift(q.corners[k].offset));
  }
  // Side k runs from corner k-1 to corner k.
  std::vector<Circle> circles;
  for (int k = 0; k < 4; ++k) {
    const ExtendedComplex& a = corner[(k + 3) % 4];
    const ExtendedComplex& b = corner[k];
    if (mk[k].is_finite()) {
      const ExtendedComplex& on = b.is_finite() ? b : a;
      circles.push_back(Circle::make_circle(mk[k].value(), std::abs(on.value() - mk[k].value())));
    } else {
      circles.push_back(Circle::make_line(a.value(), b.value()));
    }
  }
  std::array<ExtendedComplex, 4> moved;
  for (int k = 0; k < 4; ++k) moved[k] = second_intersection(circles[k], circles[(k + 1) % 4], corner[k]);

  std::vector<ExtendedComplex> distinct;
  for (const auto& x : moved) {
    if (std::none_of(distinct.begin(), distinct.end(), [&](const auto& y) { return coincident(x, y); })) {
      distinct.push_back(x);
    }
  }
  if (distinct.size() < 3) {
    throw Error(ErrorCode::NumericalTangencyAmbiguity,
                "second intersections at face " + id_str(f.value) + " do not determine a circle");
  }
  const Circle fresh = circumcircle(distinct[0], distinct[1], distinct[2]);
  for (const auto& x : moved) {
    if (fresh.residual(x) > 1e-6) {
      throw Error(ErrorCode::ConstructionFailure,
                  "second intersections at face " + id_str(f.value) + " are not concyclic");
    }
  }

  SurfaceGraph g2 = mutate_at_face(g, f);
  std::map<VertexId, ExtendedComplex> vertices;
  for (const auto& [v, z] : p.vertices()) {
    if (g2.has_vertex(v)) vertices.emplace(v, z);
  }
  const auto new_corners = g2.corners(f);
  const double scale = std::max(1.0, fresh.scale());
  for (int k = 0; k < 4; ++k) {
    const VertexId v = new_corners[k].vertex;
    const ExtendedComplex base = translate(moved[k], -per.lift(new_corners[k].offset));
    auto it = vertices.find(v);
    if (it == vertices.end()) {
      vertices.emplace(v, base);
    } else if (!(it->second.is_infinite() && base.is_infinite()) &&
               (it->second.is_infinite() || base.is_infinite() ||
                std::abs(it->second.value() - base.value()) > 1e-6 * scale)) {
      throw Error(ErrorCode::NumericalTangencyAmbiguity,
                  "moved corner of face " + id_str(f.value) + " misses the vertex it merges with");
    }
  }
  auto centers = p.centers().points();
  centers[f] = circle_center_of(fresh);
  FaceDrawing d(std::move(g2), std::move(centers), per);
  return CirclePattern(std::move(d), std::move(vertices));
}

FaceDrawing mobius_mutation_move(const FaceDrawing& d, FaceId f) {
  const QuadView q = valid_face(d.graph(), f);
  const auto mk = neighbour_centers(d, q);
  const MobiusMap mob = mobius_mutation(mk[0], mk[1], mk[2], mk[3]);
  auto points = d.points();
  points[f] = mob(d.at(f));
  return FaceDrawing(mutate_at_face(d.graph(), f), std::move(points), d.periods());
}

ExtendedComplex clifford_point_geometric(const FaceDrawing& d, FaceId f) {
  const QuadView q = valid_face(d.graph(), f);
  const ExtendedComplex base = d.at(f);
  const auto n = neighbour_centers(d, q);
  const Circle through = circumcircle(base, n[0], n[1]);
  if (through.contains(n[2]) && through.contains(n[3])) {
    throw Error(ErrorCode::ConcyclicDegenerate, "the five points at face " + id_str(f.value) + " are concyclic");
  }
  // c_k passes through the base and the neighbours k-1 and k.
  std::vector<Circle> c;
  for (int k = 0; k < 4; ++k) c.push_back(circumcircle(base, n[(k + 3) % 4], n[k]));
  std::array<ExtendedComplex, 4> diagonal;  // diagonal[k] = second point of c_{k-1} and c_{k+1}
  for (int k = 0; k < 4; ++k) {
    diagonal[k] = second_intersection(c[(k + 3) % 4], c[(k + 1) % 4], base);
    if (coincident(diagonal[k], base)) {
      throw Error(ErrorCode::ConstructionFailure, "opposite circles are tangent at the base point");
    }
  }
  std::vector<Circle> tilde;
  for (int k = 0; k < 4; ++k) tilde.push_back(circumcircle(n[k], n[(k + 3) % 4], diagonal[k]));
  // Consecutive circles tilde_k and tilde_{k+1} share n[k].
  std::vector<internal::SharedPoint> shared;
  for (std::size_t k = 0; k < 4; ++k) shared.push_back({k, (k + 1) % 4, n[k]});
  return internal::common_point(tilde, shared, 1e-8, ErrorCode::ConstructionFailure);
}

CirclePattern make_regular_torus_pattern(int rows, int cols) {
  SurfaceGraph g = build_square_grid_torus(rows, cols);
  std::map<VertexId, ExtendedComplex> vertices;
  std::map<FaceId, ExtendedComplex> centers;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const auto id = static_cast<std::uint32_t>(i * cols + j);
      vertices.emplace(VertexId{id}, ExtendedComplex(j + 0.5, i + 0.5));
      centers.emplace(FaceId{id}, ExtendedComplex(j + 1.0, i + 1.0));
    }
  }
  Periods per{Complex(cols, 0.0), Complex(0.0, rows)};
  return CirclePattern(FaceDrawing(std::move(g), std::move(centers), per), std::move(vertices));
}

CirclePattern make_regular_patch_pattern(int rows, int cols) {
  SurfaceGraph g = build_square_grid_patch(rows, cols);
  std::map<VertexId, ExtendedComplex> vertices;
  std::map<FaceId, ExtendedComplex> centers;
  for (int i = 0; i <= rows; ++i) {
    for (int j = 0; j <= cols; ++j) {
      vertices.emplace(VertexId{static_cast<std::uint32_t>(i * (cols + 1) + j)}, ExtendedComplex(j + 0.5, i + 0.5));
    }
  }
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      centers.emplace(FaceId{static_cast<std::uint32_t>(i * cols + j)}, ExtendedComplex(j + 1.0, i + 1.0));
    }
  }
  return CirclePattern(FaceDrawing(std::move(g), std::move(centers)), std::move(vertices));
}

}  // namespace miquel
