#include <algorithm>
#include <cstdio>
#include <sstream>

#include "miquel/error.hpp"
#include "miquel_cli/cli.hpp"

namespace miquel::cli {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x == 0.0 ? 0.0 : x);
  return buf;
}

struct Segment {
  Complex a, b;
};

// Endpoints of e in the frame of a face that contains it.
std::optional<Segment> edge_segment(const CirclePattern& p, EdgeId e) {
  const SurfaceGraph& g = p.graph();
  for (bool forward : {true, false}) {
    const auto f = forward ? g.left_face(e) : g.right_face(e);
    if (!f) continue;
    const auto& cycle = g.face(*f).cycle;
    const auto pts = p.face_vertex_points(*f);
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      if (cycle[k].edge != e || cycle[k].forward != forward) continue;
      const auto& tail = pts[(k + cycle.size() - 1) % cycle.size()];
      const auto& head = pts[k];
      if (tail.is_infinite() || head.is_infinite()) return std::nullopt;
      return Segment{tail.value(), head.value()};
    }
  }
  return std::nullopt;
}

}  // namespace

SvgLayers parse_layers(const std::string& spec) {
  SvgLayers l{false, false, false, false};
  std::stringstream in(spec);
  std::string name;
  while (std::getline(in, name, ',')) {
    if (name == "circles") {
      l.circles = true;
    } else if (name == "centers") {
      l.centers = true;
    } else if (name == "edges") {
      l.edges = true;
    } else if (name == "dual") {
      l.dual = true;
    } else {
      throw Error(ErrorCode::InvalidInput, "unknown layer '" + name + "'");
    }
  }
  return l;
}

std::string export_svg(const CirclePattern& p, const SvgLayers& layers) {
  const SurfaceGraph& g = p.graph();
  std::ostringstream body;
  double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  bool first = true;
  auto grow = [&](Complex z, double r = 0.0) {
    if (first) {
      lo_x = z.real() - r, hi_x = z.real() + r, lo_y = z.imag() - r, hi_y = z.imag() + r;
      first = false;
      return;
    }
    lo_x = std::min(lo_x, z.real() - r), hi_x = std::max(hi_x, z.real() + r);
    lo_y = std::min(lo_y, z.imag() - r), hi_y = std::max(hi_y, z.imag() + r);
  };

  if (layers.circles) {
    for (const auto& [f, face] : g.faces()) {
      const Circle c = p.face_circle(f);
      if (c.is_line()) {
        const Complex a = c.anchor_a(), b = c.anchor_b();
        body << "<line class=\"circle line\" x1=\"" << num(a.real()) << "\" y1=\"" << num(a.imag()) << "\" x2=\""
             << num(b.real()) << "\" y2=\"" << num(b.imag()) << "\"/>\n";
        grow(a), grow(b);
      } else {
        body << "<circle class=\"circle\" cx=\"" << num(c.center().real()) << "\" cy=\"" << num(c.center().imag())
             << "\" r=\"" << num(c.radius()) << "\"/>\n";
        grow(c.center(), c.radius());
      }
    }
  }
  if (layers.edges) {
    for (const auto& [e, edge] : g.edges()) {
      const auto s = edge_segment(p, e);
      if (!s) continue;
      body << "<line class=\"edge\" x1=\"" << num(s->a.real()) << "\" y1=\"" << num(s->a.imag()) << "\" x2=\""
           << num(s->b.real()) << "\" y2=\"" << num(s->b.imag()) << "\"/>\n";
      grow(s->a), grow(s->b);
    }
  }
  if (layers.dual) {
    for (const auto& [f, face] : g.faces()) {
      const ExtendedComplex from = p.centers().at(f);
      for (const auto& side : g.sides(f)) {
        if (!side.neighbour || side.direction != DualDirection::outgoing) continue;
        const ExtendedComplex to = p.centers().neighbour_point(side);
        if (from.is_infinite() || to.is_infinite()) continue;
        body << "<line class=\"dual\" x1=\"" << num(from.real()) << "\" y1=\"" << num(from.imag()) << "\" x2=\""
             << num(to.real()) << "\" y2=\"" << num(to.imag()) << "\" marker-end=\"url(#arrow)\"/>\n";
        grow(from.value()), grow(to.value());
      }
    }
  }
  if (layers.centers) {
    for (const auto& [f, z] : p.centers().points()) {
      if (z.is_infinite()) continue;
      body << "<circle class=\"center\" cx=\"" << num(z.real()) << "\" cy=\"" << num(z.imag()) << "\" r=\"0.04\"/>\n";
      grow(z.value());
    }
  }
  if (first) grow(Complex(0.0, 0.0), 1.0);
  const double pad = 0.05 * std::max({hi_x - lo_x, hi_y - lo_y, 1.0});
  lo_x -= pad, hi_x += pad, lo_y -= pad, hi_y += pad;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(lo_x) << " " << num(-hi_y) << " "
      << num(hi_x - lo_x) << " " << num(hi_y - lo_y) << "\">\n"
      << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" "
         "markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\"/></marker></defs>\n"
      << "<style>.circle{fill:none;stroke:#3465a4;stroke-width:0.01}.edge{stroke:#222;stroke-width:0.015}"
         ".dual{stroke:#c00;stroke-width:0.01}.center{fill:#c00}</style>\n"
      << "<g transform=\"scale(1,-1)\">\n"
      << body.str() << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace miquel::cli
