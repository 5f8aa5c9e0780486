#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "miquel/circle_pattern.hpp"
#include "miquel/surface_graph.hpp"

namespace miquel {

inline constexpr std::size_t kDefaultMaxVertices = 24;

struct EdgeWeights {
  std::map<EdgeId, double> values;
  // Throws InvalidInput unless every edge of g has a strictly positive weight.
  void check_covers(const SurfaceGraph& g) const;
};

struct FaceWeights {
  std::map<FaceId, double> values;
};

using Matching = std::vector<EdgeId>;  // sorted by id

struct MatchingEnsemble {
  std::vector<Matching> matchings;
  std::vector<double> weights;
  double partition_function = 0.0;
  std::vector<double> probabilities;  // empty when the partition function vanishes
};

std::vector<Matching> enumerate_matchings(const SurfaceGraph& g,
                                          std::size_t max_vertices = kDefaultMaxVertices);
MatchingEnsemble dimer_statistics(const SurfaceGraph& g, const EdgeWeights& w,
                                  std::size_t max_vertices = kDefaultMaxVertices);

// Alternating products around each face; boundary sides of a patch are skipped.
FaceWeights face_weights(const SurfaceGraph& g, const EdgeWeights& w);
// Distances between the centers across each edge; boundary edges of a patch get weight 1.
EdgeWeights weights_from_pattern(const CirclePattern& p);
// Face weights after mutation at f. Faces adjacent to f across several sides
// receive one factor per side.
FaceWeights face_weight_update(const FaceWeights& t, const SurfaceGraph& g, FaceId f);

struct MatchingClass {
  std::vector<EdgeId> key;  // the matching restricted to edges outside the neighbourhood
  double before = 0.0;
  double after = 0.0;
};

struct UrbanRenewalReport {
  bool defined = true;
  double max_discrepancy = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::vector<MatchingClass> classes;
};

UrbanRenewalReport urban_renewal_check(const SurfaceGraph& g, const EdgeWeights& w, FaceId f,
                                       const SurfaceGraph& g_tilde, const EdgeWeights& w_tilde,
                                       double tol = 1e-9,
                                       std::size_t max_vertices = kDefaultMaxVertices);

}  // namespace miquel
