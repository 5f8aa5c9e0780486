#include "miquel/surface_graph.hpp"

#include <algorithm>
#include <deque>

#include "miquel/error.hpp"

namespace miquel {

namespace {

std::string id_str(std::uint32_t v) { return std::to_string(v); }

[[noreturn]] void not_a_quad(FaceId f, const std::string& why) {
  throw Error(ErrorCode::NotAValidQuad, "face " + id_str(f.value) + ": " + why);
}

}  // namespace

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NotBipartite: return "NotBipartite";
    case ViolationKind::VertexDegree: return "VertexDegree";
    case ViolationKind::FaceDegree: return "FaceDegree";
    case ViolationKind::DualOrientation: return "DualOrientation";
    case ViolationKind::EulerCharacteristic: return "EulerCharacteristic";
    case ViolationKind::OffsetMismatch: return "OffsetMismatch";
    case ViolationKind::EdgeIncidence: return "EdgeIncidence";
  }
  return "Unknown";
}

std::string to_string(Surface surface) {
  switch (surface) {
    case Surface::sphere: return "sphere";
    case Surface::torus: return "torus";
    case Surface::plane_patch: return "plane-patch";
  }
  return "unknown";
}

Surface surface_from_string(const std::string& name) {
  if (name == "sphere") return Surface::sphere;
  if (name == "torus") return Surface::torus;
  if (name == "plane-patch") return Surface::plane_patch;
  throw Error(ErrorCode::ParseError, "unknown surface '" + name + "'");
}

SurfaceGraph::SurfaceGraph(Surface surface, std::vector<Vertex> vertices, std::vector<Edge> edges,
                           std::vector<Face> faces, RetiredMap retired)
    : surface_(surface), retired_(std::move(retired)) {
  for (const auto& v : vertices) {
    if (!vertices_.emplace(v.id, v).second) {
      throw Error(ErrorCode::InvalidInput, "duplicate vertex id " + id_str(v.id.value));
    }
  }
  for (const auto& e : edges) {
    if (!vertices_.contains(e.minus) || !vertices_.contains(e.plus)) {
      throw Error(ErrorCode::InvalidInput, "edge " + id_str(e.id.value) + " has unknown endpoint");
    }
    if (!edges_.emplace(e.id, e).second) {
      throw Error(ErrorCode::InvalidInput, "duplicate edge id " + id_str(e.id.value));
    }
  }
  for (auto& f : faces) {
    for (const auto& d : f.cycle) {
      if (!edges_.contains(d.edge)) {
        throw Error(ErrorCode::InvalidInput,
                    "face " + id_str(f.id.value) + " uses unknown edge " + id_str(d.edge.value));
      }
    }
    // Canonical start: the dart with the smallest (edge, direction).
    auto first = std::min_element(f.cycle.begin(), f.cycle.end(), [](const Dart& a, const Dart& b) {
      return std::pair{a.edge, a.forward} < std::pair{b.edge, b.forward};
    });
    std::rotate(f.cycle.begin(), first, f.cycle.end());
    const FaceId id = f.id;
    if (!faces_.emplace(id, std::move(f)).second) {
      throw Error(ErrorCode::InvalidInput, "duplicate face id " + id_str(id.value));
    }
  }
  build_index();
}

void SurfaceGraph::build_index() {
  dart_index_.clear();
  incidence_.clear();
  conflicts_.clear();
  for (const auto& [id, v] : vertices_) incidence_[id];
  for (const auto& [id, e] : edges_) {
    incidence_[e.minus].push_back(id);
    if (e.plus != e.minus) incidence_[e.plus].push_back(id);
    dart_index_[id];
  }
  for (const auto& [fid, f] : faces_) {
    for (std::size_t i = 0; i < f.cycle.size(); ++i) {
      const Dart& d = f.cycle[i];
      auto& slot = dart_index_[d.edge][d.forward ? 1 : 0];
      if (slot) {
        conflicts_.push_back("edge " + id_str(d.edge.value) + " traversed twice in the " +
                             (d.forward ? "forward" : "backward") + " direction");
        continue;
      }
      slot = DartLocation{fid, i};
    }
  }
}

const Vertex& SurfaceGraph::vertex(VertexId id) const {
  auto it = vertices_.find(id);
  if (it == vertices_.end()) throw Error(ErrorCode::InvalidInput, "unknown vertex " + id_str(id.value));
  return it->second;
}

const Edge& SurfaceGraph::edge(EdgeId id) const {
  auto it = edges_.find(id);
  if (it == edges_.end()) throw Error(ErrorCode::InvalidInput, "unknown edge " + id_str(id.value));
  return it->second;
}

const Face& SurfaceGraph::face(FaceId id) const {
  auto it = faces_.find(id);
  if (it == faces_.end()) throw Error(ErrorCode::InvalidInput, "unknown face " + id_str(id.value));
  return it->second;
}

VertexId SurfaceGraph::tail(const Dart& d) const {
  const Edge& e = edge(d.edge);
  return d.forward ? e.minus : e.plus;
}

VertexId SurfaceGraph::head(const Dart& d) const {
  const Edge& e = edge(d.edge);
  return d.forward ? e.plus : e.minus;
}

std::size_t SurfaceGraph::degree(VertexId v) const { return incident_edges(v).size(); }

const std::vector<EdgeId>& SurfaceGraph::incident_edges(VertexId v) const {
  auto it = incidence_.find(v);
  if (it == incidence_.end()) throw Error(ErrorCode::InvalidInput, "unknown vertex " + id_str(v.value));
  return it->second;
}

std::optional<SurfaceGraph::DartLocation> SurfaceGraph::locate(EdgeId e, bool forward) const {
  auto it = dart_index_.find(e);
  if (it == dart_index_.end()) return std::nullopt;
  return it->second[forward ? 1 : 0];
}

std::optional<FaceId> SurfaceGraph::left_face(EdgeId e) const {
  auto loc = locate(e, true);
  if (!loc) return std::nullopt;
  return loc->face;
}

std::optional<FaceId> SurfaceGraph::right_face(EdgeId e) const {
  auto loc = locate(e, false);
  if (!loc) return std::nullopt;
  return loc->face;
}

bool SurfaceGraph::is_boundary_edge(EdgeId e) const {
  return !left_face(e).has_value() || !right_face(e).has_value();
}

bool SurfaceGraph::is_boundary_vertex(VertexId v) const {
  const auto& inc = incident_edges(v);
  return std::any_of(inc.begin(), inc.end(), [&](EdgeId e) { return is_boundary_edge(e); });
}

bool SurfaceGraph::is_boundary_face(FaceId f) const {
  const auto& cyc = face(f).cycle;
  return std::any_of(cyc.begin(), cyc.end(), [&](const Dart& d) { return is_boundary_edge(d.edge); });
}

std::vector<FaceSide> SurfaceGraph::sides(FaceId f) const {
  const auto& cyc = face(f).cycle;
  std::vector<FaceSide> out;
  out.reserve(cyc.size());
  for (const Dart& d : cyc) {
    FaceSide s;
    s.edge = d.edge;
    s.direction = d.forward ? DualDirection::outgoing : DualDirection::incoming;
    if (auto other = locate(d.edge, !d.forward)) {
      const auto& ocyc = face(other->face).cycle;
      const Offset head_in_other = ocyc[(other->index + 1) % ocyc.size()].tail_offset;
      s.neighbour = other->face;
      s.neighbour_shift = d.tail_offset - head_in_other;
    }
    out.push_back(s);
  }
  return out;
}

std::vector<Corner> SurfaceGraph::corners(FaceId f) const {
  const auto& cyc = face(f).cycle;
  std::vector<Corner> out;
  out.reserve(cyc.size());
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    out.push_back({head(cyc[i]), cyc[(i + 1) % cyc.size()].tail_offset});
  }
  return out;
}

std::vector<GraphViolation> validate_surface_graph(const SurfaceGraph& g) {
  std::vector<GraphViolation> out;
  const bool closed = g.surface() != Surface::plane_patch;
  for (const auto& [id, e] : g.edges()) {
    if (g.vertex(e.minus).color != Color::minus || g.vertex(e.plus).color != Color::plus) {
      out.push_back({ViolationKind::NotBipartite,
                     "edge " + id_str(id.value) + " does not join a - vertex to a + vertex"});
    }
    const bool l = g.left_face(id).has_value();
    const bool r = g.right_face(id).has_value();
    if (!l && !r) {
      out.push_back({ViolationKind::EdgeIncidence, "edge " + id_str(id.value) + " bounds no face"});
    } else if (closed && (!l || !r)) {
      out.push_back({ViolationKind::EdgeIncidence,
                     "edge " + id_str(id.value) + " is traversed on one side only"});
    }
  }
  for (const auto& c : g.orientation_conflicts()) out.push_back({ViolationKind::DualOrientation, c});
  for (const auto& [id, v] : g.vertices()) {
    if (!closed && g.is_boundary_vertex(id)) continue;
    if (g.degree(id) < 3) {
      out.push_back({ViolationKind::VertexDegree, "vertex " + id_str(id.value) + " has degree " +
                                                      std::to_string(g.degree(id))});
    }
  }
  for (const auto& [fid, f] : g.faces()) {
    const auto n = f.cycle.size();
    if (n < 2) {
      out.push_back({ViolationKind::FaceDegree,
                     "face " + id_str(fid.value) + " has degree " + std::to_string(n)});
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (g.head(f.cycle[i]) != g.tail(f.cycle[(i + 1) % n])) {
        out.push_back({ViolationKind::DualOrientation,
                       "face " + id_str(fid.value) + " boundary does not chain at position " +
                           std::to_string(i)});
      }
    }
    if (g.surface() != Surface::torus) {
      for (const auto& d : f.cycle) {
        if (d.tail_offset != Offset{0, 0}) {
          out.push_back({ViolationKind::OffsetMismatch,
                         "face " + id_str(fid.value) + " carries a period offset off the torus"});
          break;
        }
      }
    }
  }
  if (g.surface() == Surface::torus) {
    // Both endpoints of a shared edge must induce the same relative frame shift.
    for (const auto& [fid, f] : g.faces()) {
      const auto n = f.cycle.size();
      for (std::size_t i = 0; i < n; ++i) {
        const Dart& d = f.cycle[i];
        auto oface = d.forward ? g.right_face(d.edge) : g.left_face(d.edge);
        if (!oface) continue;
        const auto& ocyc = g.face(*oface).cycle;
        for (std::size_t j = 0; j < ocyc.size(); ++j) {
          if (ocyc[j].edge != d.edge || ocyc[j].forward == d.forward) continue;
          const Offset via_tail = d.tail_offset - ocyc[(j + 1) % ocyc.size()].tail_offset;
          const Offset via_head = f.cycle[(i + 1) % n].tail_offset - ocyc[j].tail_offset;
          if (via_tail != via_head) {
            out.push_back({ViolationKind::OffsetMismatch,
                           "edge " + id_str(d.edge.value) + " has inconsistent period offsets"});
          }
        }
      }
    }
  }
  if (closed) {
    const long chi = static_cast<long>(g.vertices().size()) - static_cast<long>(g.edges().size()) +
                     static_cast<long>(g.faces().size());
    const long expected = g.surface() == Surface::sphere ? 2 : 0;
    if (chi != expected) {
      out.push_back({ViolationKind::EulerCharacteristic,
                     "V-E+F = " + std::to_string(chi) + ", expected " + std::to_string(expected)});
    }
  }
  return out;
}

QuadView quad_view(const SurfaceGraph& g, FaceId f) {
  if (!g.has_face(f)) not_a_quad(f, "unknown face");
  const auto sides = g.sides(f);
  const auto corners = g.corners(f);
  if (sides.size() != 4) not_a_quad(f, "degree " + std::to_string(sides.size()));
  QuadView q;
  q.face = f;
  for (int k = 0; k < 4; ++k) {
    q.sides[k] = sides[k];
    q.corners[k] = corners[k];
    if (!sides[k].neighbour) not_a_quad(f, "side on the boundary");
    if (*sides[k].neighbour == f) not_a_quad(f, "side shared with itself");
    if (g.is_boundary_vertex(corners[k].vertex)) not_a_quad(f, "corner on the boundary");
  }
  for (int k = 0; k < 4; ++k) {
    for (int l = k + 1; l < 4; ++l) {
      if (sides[k].edge == sides[l].edge) not_a_quad(f, "repeated side");
      if (corners[k].vertex == corners[l].vertex) not_a_quad(f, "repeated corner");
    }
    if (*sides[k].neighbour == *sides[(k + 1) % 4].neighbour) {
      not_a_quad(f, "consecutive neighbours coincide");
    }
  }
  return q;
}

std::set<EdgeId> edge_neighbourhood(const SurfaceGraph& g, FaceId f) {
  const QuadView q = quad_view(g, f);
  std::set<FaceId> local{f};
  for (const auto& s : q.sides) local.insert(*s.neighbour);
  std::set<EdgeId> out;
  for (const auto& [id, e] : g.edges()) {
    auto l = g.left_face(id);
    auto r = g.right_face(id);
    if (l && r && local.contains(*l) && local.contains(*r)) out.insert(id);
  }
  return out;
}

SurfaceGraph mutate_at_face(const SurfaceGraph& g, FaceId f) {
  const QuadView q = quad_view(g, f);

  std::uint32_t next_vertex = 0;
  std::uint32_t next_edge = 0;
  for (const auto& [id, v] : g.vertices_) next_vertex = std::max(next_vertex, id.value + 1);
  for (const auto& [id, e] : g.edges_) next_edge = std::max(next_edge, id.value + 1);
  for (const auto& [key, r] : g.retired_) {
    next_vertex = std::max(next_vertex, r.vertex.value + 1);
    next_edge = std::max(next_edge, r.edge.value + 1);
  }

  struct Plan {
    bool split = false;
    VertexId old_corner;
    VertexId new_corner;
    EdgeId leg;
    Offset new_offset{0, 0};
    Offset side_tail_offset{0, 0};  // tail offset of side k in f_k after the move
    Offset leg_tail_in_next{0, 0};  // split only: corner offset in f_{k+1}
  };
  std::array<Plan, 4> plan;
  RetiredMap retired = g.retired_;
  std::map<VertexId, Vertex> vertices = g.vertices_;
  std::map<EdgeId, Edge> edges = g.edges_;
  std::map<FaceId, Face> faces = g.faces_;

  auto dart_pos = [&](FaceId face, EdgeId e) -> std::size_t {
    const auto& cyc = faces.at(face).cycle;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      if (cyc[i].edge == e) return i;
    }
    throw Error(ErrorCode::ResultNotInObs, "edge missing from neighbour face during mutation");
  };

  for (int k = 0; k < 4; ++k) {
    const int k1 = (k + 1) % 4;
    Plan& p = plan[k];
    const VertexId c = q.corners[k].vertex;
    const EdgeId sk = q.sides[k].edge;
    const EdgeId sk1 = q.sides[k1].edge;
    const FaceId fk = *q.sides[k].neighbour;
    const FaceId fk1 = *q.sides[k1].neighbour;
    const auto& cyc_k = g.faces_.at(fk).cycle;
    const auto& cyc_k1 = g.faces_.at(fk1).cycle;
    const std::size_t ik = dart_pos(fk, sk);
    const std::size_t ik1 = dart_pos(fk1, sk1);
    p.old_corner = c;
    const std::size_t deg = g.degree(c);
    if (deg >= 4) {
      p.split = true;
      auto it = retired.find({f, sk});
      if (it != retired.end() && !vertices.contains(it->second.vertex) &&
          !edges.contains(it->second.edge)) {
        p.new_corner = it->second.vertex;
        p.leg = it->second.edge;
        retired.erase(it);
      } else {
        p.new_corner = VertexId{next_vertex++};
        p.leg = EdgeId{next_edge++};
      }
      p.new_offset = q.corners[k].offset;
      p.side_tail_offset = cyc_k[ik].tail_offset;
      p.leg_tail_in_next = cyc_k1[(ik1 + 1) % cyc_k1.size()].tail_offset;
    } else if (deg == 3) {
      const auto& inc = g.incident_edges(c);
      EdgeId leg{};
      bool found = false;
      for (EdgeId e : inc) {
        if (e != sk && e != sk1) {
          leg = e;
          found = true;
        }
      }
      const Dart& before = cyc_k[(ik + cyc_k.size() - 1) % cyc_k.size()];
      const Dart& after = cyc_k1[(ik1 + 1) % cyc_k1.size()];
      if (!found || before.edge != leg || after.edge != leg) {
        throw Error(ErrorCode::ResultNotInObs, "degree-3 corner without a contractible leg");
      }
      const Edge& le = g.edges_.at(leg);
      const VertexId w = le.minus == c ? le.plus : le.minus;
      for (const auto& corner : q.corners) {
        if (corner.vertex == w) {
          throw Error(ErrorCode::ResultNotInObs, "contraction would merge two corners of the face");
        }
      }
      p.leg = leg;
      p.new_corner = w;
      p.side_tail_offset = before.tail_offset;
      p.new_offset = q.corners[k].offset + (before.tail_offset - cyc_k[ik].tail_offset);
      retired[{f, sk}] = RetiredIds{c, leg};
    } else {
      throw Error(ErrorCode::ResultNotInObs, "corner of degree below 3");
    }
  }
  for (int k = 0; k < 4; ++k) {
    for (int l = k + 1; l < 4; ++l) {
      if (plan[k].new_corner == plan[l].new_corner) {
        throw Error(ErrorCode::ResultNotInObs, "mutation would identify two corners");
      }
    }
  }

  // Vertex and leg bookkeeping.
  for (const Plan& p : plan) {
    const Color cc = g.vertices_.at(p.old_corner).color;
    if (p.split) {
      vertices.emplace(p.new_corner, Vertex{p.new_corner, opposite(cc)});
      const bool c_minus = cc == Color::minus;
      edges.emplace(p.leg, Edge{p.leg, c_minus ? p.old_corner : p.new_corner,
                                c_minus ? p.new_corner : p.old_corner});
    } else {
      vertices.erase(p.old_corner);
      edges.erase(p.leg);
    }
  }
  auto is_minus = [&](VertexId v) { return vertices.at(v).color == Color::minus; };

  // Side edges now join the new corners; their orientation flips with the colours.
  Face& face_f = faces.at(f);
  for (int k = 0; k < 4; ++k) {
    const int km = (k + 3) % 4;
    const VertexId a = plan[km].new_corner;
    const VertexId b = plan[k].new_corner;
    const EdgeId sk = q.sides[k].edge;
    edges[sk] = Edge{sk, is_minus(a) ? a : b, is_minus(a) ? b : a};
    face_f.cycle[k].forward = is_minus(a);
    face_f.cycle[k].tail_offset = plan[km].new_offset;
  }
  for (int k = 0; k < 4; ++k) {
    const EdgeId sk = q.sides[k].edge;
    Face& fk = faces.at(*q.sides[k].neighbour);
    const std::size_t i = dart_pos(fk.id, sk);
    fk.cycle[i].forward = is_minus(plan[k].new_corner);
    fk.cycle[i].tail_offset = plan[k].side_tail_offset;
  }
  for (int k = 0; k < 4; ++k) {
    const int k1 = (k + 1) % 4;
    const Plan& p = plan[k];
    Face& fk = faces.at(*q.sides[k].neighbour);
    Face& fk1 = faces.at(*q.sides[k1].neighbour);
    const std::size_t ik = dart_pos(fk.id, q.sides[k].edge);
    if (p.split) {
      const bool c_minus = g.vertices_.at(p.old_corner).color == Color::minus;
      fk.cycle.insert(fk.cycle.begin() + static_cast<std::ptrdiff_t>(ik),
                      Dart{p.leg, c_minus, p.side_tail_offset});
      const std::size_t ik1 = dart_pos(fk1.id, q.sides[k1].edge);
      fk1.cycle.insert(fk1.cycle.begin() + static_cast<std::ptrdiff_t>(ik1 + 1),
                       Dart{p.leg, !c_minus, p.leg_tail_in_next});
    } else {
      fk.cycle.erase(fk.cycle.begin() +
                     static_cast<std::ptrdiff_t>((ik + fk.cycle.size() - 1) % fk.cycle.size()));
      const std::size_t ik1 = dart_pos(fk1.id, q.sides[k1].edge);
      fk1.cycle.erase(fk1.cycle.begin() + static_cast<std::ptrdiff_t>((ik1 + 1) % fk1.cycle.size()));
    }
  }

  std::vector<Vertex> vv;
  std::vector<Edge> ev;
  std::vector<Face> fv;
  for (auto& [id, v] : vertices) vv.push_back(v);
  for (auto& [id, e] : edges) ev.push_back(e);
  for (auto& [id, fc] : faces) fv.push_back(std::move(fc));
  SurfaceGraph out(g.surface(), std::move(vv), std::move(ev), std::move(fv), std::move(retired));
  for (const Plan& p : plan) {
    for (VertexId v : {p.new_corner, p.old_corner}) {
      if (out.has_vertex(v) && !out.is_boundary_vertex(v) && out.degree(v) < 3) {
        throw Error(ErrorCode::ResultNotInObs,
                    "vertex " + id_str(v.value) + " would have degree " + std::to_string(out.degree(v)));
      }
    }
  }
  for (const auto& s : q.sides) {
    if (out.face(*s.neighbour).cycle.size() < 2) {
      throw Error(ErrorCode::ResultNotInObs, "neighbour face would have degree below 2");
    }
  }
  return out;
}

namespace {

SurfaceGraph build_grid(int rows, int cols, bool torus) {
  const int vcols = torus ? cols : cols + 1;
  const int vrows = torus ? rows : rows + 1;
  auto vid = [&](int i, int j) {
    if (torus) {
      i %= rows;
      j %= cols;
    }
    return VertexId{static_cast<std::uint32_t>(i * vcols + j)};
  };
  auto plus = [](int i, int j) { return (i + j) % 2 == 0; };
  std::vector<Vertex> vertices;
  for (int i = 0; i < vrows; ++i) {
    for (int j = 0; j < vcols; ++j) {
      vertices.push_back({vid(i, j), plus(i, j) ? Color::plus : Color::minus});
    }
  }
  const int hcount = vrows * cols;
  auto hid = [&](int i, int j) { return EdgeId{static_cast<std::uint32_t>((i % vrows) * cols + j)}; };
  auto vedge = [&](int i, int j) {
    return EdgeId{static_cast<std::uint32_t>(hcount + i * vcols + (j % vcols))};
  };
  std::vector<Edge> edges;
  auto make_edge = [&](EdgeId id, int i0, int j0, int i1, int j1) {
    const VertexId a = vid(i0, j0);
    const VertexId b = vid(i1, j1);
    edges.push_back(plus(i0, j0) ? Edge{id, b, a} : Edge{id, a, b});
  };
  for (int i = 0; i < vrows; ++i) {
    for (int j = 0; j < cols; ++j) make_edge(hid(i, j), i, j, i, j + 1);
  }
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < vcols; ++j) make_edge(vedge(i, j), i, j, i + 1, j);
  }
  std::vector<Face> faces;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const int wrap_x = torus && j + 1 == cols ? 1 : 0;
      const int wrap_y = torus && i + 1 == rows ? 1 : 0;
      Face f{FaceId{static_cast<std::uint32_t>(i * cols + j)}, {}};
      // Counter-clockwise: bottom, right, top (reversed), left (reversed).
      f.cycle.push_back({hid(i, j), !plus(i, j), {0, 0}});
      f.cycle.push_back({vedge(i, j + 1), !plus(i, j + 1), {wrap_x, 0}});
      f.cycle.push_back({hid(i + 1, j), !plus(i + 1, j + 1), {wrap_x, wrap_y}});
      f.cycle.push_back({vedge(i, j), !plus(i + 1, j), {0, wrap_y}});
      faces.push_back(std::move(f));
    }
  }
  return SurfaceGraph(torus ? Surface::torus : Surface::plane_patch, std::move(vertices),
                      std::move(edges), std::move(faces));
}

}  // namespace

SurfaceGraph build_square_grid_torus(int rows, int cols) {
  if (rows < 2 || cols < 2 || rows % 2 != 0 || cols % 2 != 0) {
    throw Error(ErrorCode::OddDimensions, "torus grid needs even dimensions >= 2, got " +
                                              std::to_string(rows) + "x" + std::to_string(cols));
  }
  return build_grid(rows, cols, true);
}

SurfaceGraph build_square_grid_patch(int rows, int cols) {
  if (rows < 1 || cols < 1) throw Error(ErrorCode::InvalidInput, "patch dimensions must be positive");
  return build_grid(rows, cols, false);
}

SurfaceGraph build_cycle_sphere(int half_length) {
  if (half_length < 1) throw Error(ErrorCode::InvalidInput, "cycle half length must be positive");
  const int n = 2 * half_length;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  auto is_plus = [](int k) { return k % 2 == 0; };
  for (int k = 0; k < n; ++k) {
    vertices.push_back({VertexId{static_cast<std::uint32_t>(k)}, is_plus(k) ? Color::plus : Color::minus});
  }
  for (int k = 0; k < n; ++k) {
    const auto a = VertexId{static_cast<std::uint32_t>(k)};
    const auto b = VertexId{static_cast<std::uint32_t>((k + 1) % n)};
    const auto id = EdgeId{static_cast<std::uint32_t>(k)};
    edges.push_back(is_plus(k) ? Edge{id, b, a} : Edge{id, a, b});
  }
  Face inner{FaceId{0}, {}};
  Face outer{FaceId{1}, {}};
  for (int k = 0; k < n; ++k) inner.cycle.push_back({EdgeId{static_cast<std::uint32_t>(k)}, !is_plus(k), {0, 0}});
  for (int k = n - 1; k >= 0; --k) {
    outer.cycle.push_back({EdgeId{static_cast<std::uint32_t>(k)}, !is_plus((k + 1) % n), {0, 0}});
  }
  return SurfaceGraph(Surface::sphere, std::move(vertices), std::move(edges), {inner, outer});
}

std::map<FaceId, int> face_two_coloring(const SurfaceGraph& g) {
  std::map<FaceId, int> color;
  for (const auto& [start, f] : g.faces()) {
    if (color.contains(start)) continue;
    color[start] = 0;
    std::deque<FaceId> queue{start};
    while (!queue.empty()) {
      const FaceId cur = queue.front();
      queue.pop_front();
      for (const auto& s : g.sides(cur)) {
        if (!s.neighbour) continue;
        auto it = color.find(*s.neighbour);
        if (it == color.end()) {
          color[*s.neighbour] = 1 - color[cur];
          queue.push_back(*s.neighbour);
        } else if (it->second == color[cur]) {
          throw Error(ErrorCode::InvalidInput, "dual graph is not bipartite");
        }
      }
    }
  }
  return color;
}

}  // namespace miquel
