#include "miquel/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "miquel/error.hpp"

namespace miquel::io {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::uint32_t id_value(const json& j) {
  if (j.is_number_unsigned()) return j.get<std::uint32_t>();
  if (j.is_number_integer() && j.get<long long>() >= 0) return static_cast<std::uint32_t>(j.get<long long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &pos);
    } catch (const std::exception&) {
      parse_fail("bad identifier '" + s + "'");
    }
    if (pos != s.size()) parse_fail("bad identifier '" + s + "'");
    return static_cast<std::uint32_t>(v);
  }
  parse_fail("identifier must be a non-negative integer");
}

double number(const json& j) {
  if (!j.is_number()) parse_fail("expected a number");
  return j.get<double>();
}

// Converts library errors during construction (bad ids, NaN) into parse errors.
template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    parse_fail(e.what());
  } catch (const json::exception& e) {
    parse_fail(e.what());
  }
}

struct Chain {
  bool ok = false;
  std::vector<Dart> darts;
};

Chain chain_cycle(const std::vector<Edge>& cycle, bool first_forward) {
  Chain c;
  VertexId head = first_forward ? cycle[0].plus : cycle[0].minus;
  c.darts.push_back({cycle[0].id, first_forward, {0, 0}});
  const VertexId start = first_forward ? cycle[0].minus : cycle[0].plus;
  for (std::size_t k = 1; k < cycle.size(); ++k) {
    const Edge& e = cycle[k];
    if (e.minus == head) {
      c.darts.push_back({e.id, true, {0, 0}});
      head = e.plus;
    } else if (e.plus == head) {
      c.darts.push_back({e.id, false, {0, 0}});
      head = e.minus;
    } else {
      return c;
    }
  }
  c.ok = head == start;
  return c;
}

}  // namespace

json to_json(const ExtendedComplex& z) {
  if (z.is_infinite()) return "inf";
  return json::array({z.real(), z.imag()});
}

ExtendedComplex complex_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInfinity;
    parse_fail("complex value must be [re, im] or \"inf\"");
  }
  if (!j.is_array() || j.size() != 2) parse_fail("complex value must be [re, im] or \"inf\"");
  return guarded([&] { return ExtendedComplex(number(j[0]), number(j[1])); });
}

json to_json(const Circle& c) {
  if (c.is_line()) {
    return {{"kind", "line"}, {"a", to_json(ExtendedComplex(c.anchor_a()))}, {"b", to_json(ExtendedComplex(c.anchor_b()))}};
  }
  return {{"kind", "circle"}, {"center", to_json(ExtendedComplex(c.center()))}, {"radius", c.radius()}};
}

Circle circle_from_json(const json& j) {
  const std::string kind = guarded([&] { return member(j, "kind").get<std::string>(); });
  if (kind == "circle") {
    const ExtendedComplex m = complex_from_json(member(j, "center"));
    const double r = number(member(j, "radius"));
    return guarded([&] { return Circle::make_circle(m.value(), r); });
  }
  if (kind == "line") {
    const ExtendedComplex a = complex_from_json(member(j, "a"));
    const ExtendedComplex b = complex_from_json(member(j, "b"));
    return guarded([&] { return Circle::make_line(a.value(), b.value()); });
  }
  parse_fail("unknown circle kind '" + kind + "'");
}

json to_json(const SurfaceGraph& g) {
  json out;
  out["surface"] = to_string(g.surface());
  json vertices = json::array();
  for (const auto& [id, v] : g.vertices()) {
    vertices.push_back({{"id", id.value}, {"color", v.color == Color::plus ? "+" : "-"}});
  }
  json edges = json::array();
  for (const auto& [id, e] : g.edges()) {
    edges.push_back({{"id", id.value}, {"minus", e.minus.value}, {"plus", e.plus.value}});
  }
  json faces = json::array();
  for (const auto& [id, f] : g.faces()) {
    json face{{"id", id.value}};
    json cycle = json::array();
    json offsets = json::array();
    bool any_offset = false;
    std::vector<Edge> edge_cycle;
    for (const Dart& d : f.cycle) {
      cycle.push_back(d.edge.value);
      offsets.push_back(json::array({d.tail_offset[0], d.tail_offset[1]}));
      any_offset = any_offset || d.tail_offset != Offset{0, 0};
      edge_cycle.push_back(g.edge(d.edge));
    }
    face["edge_cycle"] = cycle;
    if (!f.cycle.empty() && chain_cycle(edge_cycle, !f.cycle[0].forward).ok) {
      face["start"] = g.tail(f.cycle[0]).value;
    }
    if (any_offset) face["offsets"] = offsets;
    faces.push_back(face);
  }
  out["vertices"] = vertices;
  out["edges"] = edges;
  out["faces"] = faces;
  if (!g.retired().empty()) {
    json retired = json::array();
    for (const auto& [key, ids] : g.retired()) {
      retired.push_back(
          {{"face", key.first.value}, {"edge", key.second.value}, {"vertex", ids.vertex.value}, {"leg", ids.edge.value}});
    }
    out["retired"] = retired;
  }
  return out;
}

SurfaceGraph graph_from_json(const json& j) {
  return guarded([&] {
    const Surface surface = surface_from_string(member(j, "surface").get<std::string>());
    std::vector<Vertex> vertices;
    for (const json& v : member(j, "vertices")) {
      const std::string color = member(v, "color").get<std::string>();
      Color c;
      if (color == "+") {
        c = Color::plus;
      } else if (color == "-" || color == "−") {
        c = Color::minus;
      } else {
        parse_fail("unknown color '" + color + "'");
      }
      vertices.push_back({VertexId{id_value(member(v, "id"))}, c});
    }
    std::vector<Edge> edges;
    std::map<EdgeId, Edge> by_id;
    for (const json& e : member(j, "edges")) {
      Edge edge{EdgeId{id_value(member(e, "id"))}, VertexId{id_value(member(e, "minus"))},
                VertexId{id_value(member(e, "plus"))}};
      edges.push_back(edge);
      by_id[edge.id] = edge;
    }
    std::vector<Face> faces;
    for (const json& f : member(j, "faces")) {
      const FaceId fid{id_value(member(f, "id"))};
      std::vector<Edge> cycle;
      for (const json& e : member(f, "edge_cycle")) {
        auto it = by_id.find(EdgeId{id_value(e)});
        if (it == by_id.end()) parse_fail("face " + std::to_string(fid.value) + " uses an unknown edge");
        cycle.push_back(it->second);
      }
      if (cycle.empty()) parse_fail("face " + std::to_string(fid.value) + " has an empty cycle");
      Chain fwd = chain_cycle(cycle, true);
      Chain bwd = chain_cycle(cycle, false);
      Chain chosen;
      if (f.contains("start")) {
        const VertexId start{id_value(f.at("start"))};
        if (fwd.ok && cycle[0].minus == start) {
          chosen = fwd;
        } else if (bwd.ok && cycle[0].plus == start) {
          chosen = bwd;
        }
      } else if (fwd.ok != bwd.ok) {
        chosen = fwd.ok ? fwd : bwd;
      } else if (fwd.ok) {
        chosen = fwd;
      }
      if (!chosen.ok) parse_fail("edge cycle of face " + std::to_string(fid.value) + " does not close");
      if (f.contains("offsets")) {
        const json& offs = f.at("offsets");
        if (!offs.is_array() || offs.size() != chosen.darts.size()) parse_fail("offsets do not match the cycle");
        for (std::size_t k = 0; k < offs.size(); ++k) {
          chosen.darts[k].tail_offset = {offs[k].at(0).get<int>(), offs[k].at(1).get<int>()};
        }
      }
      faces.push_back({fid, std::move(chosen.darts)});
    }
    RetiredMap retired;
    if (j.contains("retired")) {
      for (const json& r : j.at("retired")) {
        retired[{FaceId{id_value(member(r, "face"))}, EdgeId{id_value(member(r, "edge"))}}] =
            RetiredIds{VertexId{id_value(member(r, "vertex"))}, EdgeId{id_value(member(r, "leg"))}};
      }
    }
    return SurfaceGraph(surface, std::move(vertices), std::move(edges), std::move(faces), std::move(retired));
  });
}

json to_json(const Periods& p) {
  return json::array({to_json(ExtendedComplex(p.first)), to_json(ExtendedComplex(p.second))});
}

Periods periods_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) parse_fail("periods must be a pair of complex numbers");
  const ExtendedComplex a = complex_from_json(j[0]);
  const ExtendedComplex b = complex_from_json(j[1]);
  if (a.is_infinite() || b.is_infinite()) parse_fail("periods must be finite");
  return Periods{a.value(), b.value()};
}

namespace {

template <class IdT>
json point_map(const std::map<IdT, ExtendedComplex>& points) {
  json out = json::object();
  for (const auto& [id, z] : points) out[std::to_string(id.value)] = to_json(z);
  return out;
}

template <class IdT>
std::map<IdT, ExtendedComplex> point_map_from(const json& j) {
  if (!j.is_object()) parse_fail("expected an object keyed by identifier");
  std::map<IdT, ExtendedComplex> out;
  for (const auto& [key, value] : j.items()) out.emplace(IdT{id_value(json(key))}, complex_from_json(value));
  return out;
}

}  // namespace

json to_json(const FaceDrawing& d) {
  json out{{"graph", to_json(d.graph())}, {"centers", point_map(d.points())}};
  if (d.graph().surface() == Surface::torus) out["periods"] = to_json(d.periods());
  return out;
}

FaceDrawing drawing_from_json(const json& j) {
  SurfaceGraph g = graph_from_json(member(j, "graph"));
  auto centers = point_map_from<FaceId>(member(j, "centers"));
  const Periods per = j.contains("periods") ? periods_from_json(j.at("periods")) : Periods{};
  return guarded([&] { return FaceDrawing(std::move(g), std::move(centers), per); });
}

json to_json(const CirclePattern& p) {
  json out{{"graph", to_json(p.graph())}, {"vertices", point_map(p.vertices())}, {"centers", point_map(p.centers().points())}};
  if (p.graph().surface() == Surface::torus) out["periods"] = to_json(p.periods());
  return out;
}

CirclePattern pattern_from_json(const json& j) {
  FaceDrawing d = drawing_from_json(j);
  auto vertices = point_map_from<VertexId>(member(j, "vertices"));
  return guarded([&] { return CirclePattern(std::move(d), std::move(vertices)); });
}

json to_json(const EdgeWeights& w) {
  json out = json::object();
  for (const auto& [id, x] : w.values) out[std::to_string(id.value)] = x;
  return out;
}

EdgeWeights weights_from_json(const json& j) {
  if (!j.is_object()) parse_fail("weights must be an object keyed by edge id");
  EdgeWeights w;
  for (const auto& [key, value] : j.items()) w.values[EdgeId{id_value(json(key))}] = number(value);
  return w;
}

json to_json(const OctahedralPatch& p) {
  const Window& w = p.window();
  json values = json::object();
  for (const auto& [pt, z] : p.values()) {
    values[std::to_string(pt.x) + "," + std::to_string(pt.y) + "," + std::to_string(pt.z)] = to_json(z);
  }
  return {{"window", {w.x_min, w.x_max, w.y_min, w.y_max, w.z_min, w.z_max}}, {"values", values}};
}

OctahedralPatch patch_from_json(const json& j) {
  return guarded([&] {
    const json& win = member(j, "window");
    if (!win.is_array() || win.size() != 6) parse_fail("window must list six bounds");
    OctahedralPatch p(Window{win[0].get<int>(), win[1].get<int>(), win[2].get<int>(), win[3].get<int>(),
                             win[4].get<int>(), win[5].get<int>()});
    for (const auto& [key, value] : member(j, "values").items()) {
      LatticePoint pt;
      char c1 = 0, c2 = 0;
      std::istringstream in(key);
      if (!(in >> pt.x >> c1 >> pt.y >> c2 >> pt.z) || c1 != ',' || c2 != ',' || !in.eof()) {
        parse_fail("bad lattice key '" + key + "'");
      }
      p.set(pt, complex_from_json(value));
    }
    return p;
  });
}

json to_json(const CliffordConfiguration& cfg) {
  json points = json::object();
  for (const auto& [s, z] : cfg.points) points[subset_label(s)] = to_json(z);
  json circles = json::object();
  for (const auto& [s, c] : cfg.circles) circles[subset_label(s)] = to_json(c);
  json centers = json::object();
  for (const auto& [s, z] : cfg.centers) centers[subset_label(s)] = to_json(z);
  return {{"n", cfg.n}, {"points", points}, {"circles", circles}, {"centers", centers}};
}

json to_json(const UrbanRenewalReport& r) {
  json classes = json::array();
  for (const auto& c : r.classes) {
    json key = json::array();
    for (EdgeId e : c.key) key.push_back(e.value);
    classes.push_back({{"outside_edges", key}, {"before", c.before}, {"after", c.after}});
  }
  return {{"defined", r.defined},
          {"max_discrepancy", r.max_discrepancy},
          {"tolerance", r.tolerance},
          {"passed", r.passed},
          {"classes", classes}};
}

json to_json(const StarRatioField& f) {
  json out = json::object();
  for (const auto& [id, z] : f.values) {
    out[std::to_string(id.value)] = {{"value", to_json(z)}, {"class", to_string(f.classes.at(id))}};
  }
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    parse_fail(e.what());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidInput, "cannot write '" + tmp.string() + "'");
    out << contents;
    if (!out.flush()) throw Error(ErrorCode::InvalidInput, "write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorCode::InvalidInput, "cannot move output into '" + path + "': " + ec.message());
  }
}

}  // namespace miquel::io
