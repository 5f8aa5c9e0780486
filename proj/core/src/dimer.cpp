#include "miquel/dimer.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "miquel/error.hpp"

namespace miquel {

namespace {

std::string id_str(std::uint32_t v) { return std::to_string(v); }

}  // namespace

void EdgeWeights::check_covers(const SurfaceGraph& g) const {
  for (const auto& [id, e] : g.edges()) {
    auto it = values.find(id);
    if (it == values.end()) throw Error(ErrorCode::InvalidInput, "no weight for edge " + id_str(id.value));
    if (!(it->second > 0.0) || !std::isfinite(it->second)) {
      throw Error(ErrorCode::InvalidInput, "weight of edge " + id_str(id.value) + " is not positive");
    }
  }
}

std::vector<Matching> enumerate_matchings(const SurfaceGraph& g, std::size_t max_vertices) {
  if (g.vertices().size() > max_vertices) {
    throw Error(ErrorCode::TooLarge, std::to_string(g.vertices().size()) + " vertices exceed the bound of " +
                                         std::to_string(max_vertices));
  }
  std::vector<Matching> out;
  if (g.vertices().size() % 2 != 0) return out;
  std::vector<VertexId> order;
  for (const auto& [id, v] : g.vertices()) order.push_back(id);
  std::map<VertexId, bool> covered;
  for (VertexId v : order) covered[v] = false;
  Matching current;

  // Branch on the lowest uncovered vertex.
  auto recurse = [&](auto&& self) -> void {
    auto it = std::find_if(order.begin(), order.end(), [&](VertexId v) { return !covered[v]; });
    if (it == order.end()) {
      Matching m = current;
      std::sort(m.begin(), m.end());
      out.push_back(std::move(m));
      return;
    }
    const VertexId v = *it;
    for (EdgeId eid : g.incident_edges(v)) {
      const Edge& e = g.edge(eid);
      if (e.minus == e.plus) continue;
      const VertexId u = e.minus == v ? e.plus : e.minus;
      if (covered[u]) continue;
      covered[v] = covered[u] = true;
      current.push_back(eid);
      self(self);
      current.pop_back();
      covered[v] = covered[u] = false;
    }
  };
  recurse(recurse);
  std::sort(out.begin(), out.end());
  return out;
}

MatchingEnsemble dimer_statistics(const SurfaceGraph& g, const EdgeWeights& w, std::size_t max_vertices) {
  w.check_covers(g);
  MatchingEnsemble ens;
  ens.matchings = enumerate_matchings(g, max_vertices);
  for (const auto& m : ens.matchings) {
    double weight = 1.0;
    for (EdgeId e : m) weight *= w.values.at(e);
    ens.weights.push_back(weight);
    ens.partition_function += weight;
  }
  if (ens.partition_function > 0.0) {
    for (double x : ens.weights) ens.probabilities.push_back(x / ens.partition_function);
  }
  return ens;
}

FaceWeights face_weights(const SurfaceGraph& g, const EdgeWeights& w) {
  FaceWeights t;
  for (const auto& [fid, face] : g.faces()) {
    double value = 1.0;
    for (const auto& s : g.sides(fid)) {
      if (!s.neighbour) continue;
      const double x = w.values.at(s.edge);
      value = s.direction == DualDirection::incoming ? value * x : value / x;
    }
    t.values.emplace(fid, value);
  }
  return t;
}

EdgeWeights weights_from_pattern(const CirclePattern& p) {
  const SurfaceGraph& g = p.graph();
  EdgeWeights w;
  for (const auto& [fid, face] : g.faces()) {
    const ExtendedComplex m = p.centers().at(fid);
    for (const auto& s : g.sides(fid)) {
      if (!s.neighbour || s.direction != DualDirection::outgoing) continue;
      const ExtendedComplex other = p.centers().neighbour_point(s);
      if (m.is_infinite() || other.is_infinite()) {
        throw Error(ErrorCode::InfiniteCenter, "edge " + id_str(s.edge.value) + " touches a center at infinity");
      }
      if (coincident(m, other)) {
        throw Error(ErrorCode::CoincidentCenters, "edge " + id_str(s.edge.value) + " joins coincident centers");
      }
      w.values[s.edge] = std::abs(m.value() - other.value());
    }
  }
  for (const auto& [id, e] : g.edges()) w.values.try_emplace(id, 1.0);
  return w;
}

FaceWeights face_weight_update(const FaceWeights& t, const SurfaceGraph& g, FaceId f) {
  QuadView q;
  try {
    q = quad_view(g, f);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotAValidQuad) throw;
    throw Error(ErrorCode::InvalidFace, e.what());
  }
  const double tf = t.values.at(f);
  FaceWeights out = t;
  out.values[f] = 1.0 / tf;
  // (1 + t_f) goes to neighbours the dual edge points into, i.e. outgoing sides of f.
  for (const auto& s : q.sides) {
    auto it = out.values.find(*s.neighbour);
    if (it == out.values.end()) continue;
    it->second *= s.direction == DualDirection::outgoing ? (1.0 + tf) : 1.0 / (1.0 + 1.0 / tf);
  }
  return out;
}

UrbanRenewalReport urban_renewal_check(const SurfaceGraph& g, const EdgeWeights& w, FaceId f,
                                       const SurfaceGraph& g_tilde, const EdgeWeights& w_tilde, double tol,
                                       std::size_t max_vertices) {
  const auto n = edge_neighbourhood(g, f);
  const auto n_tilde = edge_neighbourhood(g_tilde, f);
  std::set<EdgeId> outside;
  std::set<EdgeId> outside_tilde;
  for (const auto& [id, e] : g.edges()) {
    if (!n.contains(id)) outside.insert(id);
  }
  for (const auto& [id, e] : g_tilde.edges()) {
    if (!n_tilde.contains(id)) outside_tilde.insert(id);
  }
  if (outside != outside_tilde) {
    throw Error(ErrorCode::InvalidInput, "graphs differ outside the neighbourhood of face " + id_str(f.value));
  }
  w.check_covers(g);
  w_tilde.check_covers(g_tilde);
  for (EdgeId e : outside) {
    const double a = w.values.at(e);
    const double b = w_tilde.values.at(e);
    if (std::abs(a - b) > 1e-12 * std::max(a, b)) {
      throw Error(ErrorCode::WeightMismatchOutsideN, "weights differ on edge " + id_str(e.value));
    }
  }
  UrbanRenewalReport report;
  report.tolerance = tol;
  const MatchingEnsemble before = dimer_statistics(g, w, max_vertices);
  const MatchingEnsemble after = dimer_statistics(g_tilde, w_tilde, max_vertices);
  if (before.probabilities.empty() || after.probabilities.empty()) {
    report.defined = false;
    return report;
  }
  std::map<std::vector<EdgeId>, MatchingClass> classes;
  auto accumulate = [&](const MatchingEnsemble& ens, bool is_after) {
    for (std::size_t i = 0; i < ens.matchings.size(); ++i) {
      std::vector<EdgeId> key;
      for (EdgeId e : ens.matchings[i]) {
        if (outside.contains(e)) key.push_back(e);
      }
      MatchingClass& c = classes[key];
      c.key = key;
      (is_after ? c.after : c.before) += ens.probabilities[i];
    }
  };
  accumulate(before, false);
  accumulate(after, true);
  for (auto& [key, c] : classes) {
    report.max_discrepancy = std::max(report.max_discrepancy, std::abs(c.before - c.after));
    report.classes.push_back(c);
  }
  report.passed = report.max_discrepancy <= tol;
  return report;
}

}  // namespace miquel
