#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "miquel/circle_pattern.hpp"
#include "miquel/clifford.hpp"
#include "miquel/error.hpp"
#include "miquel/lattice.hpp"
#include "oracles.hpp"

using namespace miquel;
using oracle::C;

namespace {

const FaceId kCenterFace{4};  // middle face of a 3x3 patch

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidInput;
}

bool has_kind(const std::vector<PatternViolation>& vs, PatternViolationKind k) {
  return std::any_of(vs.begin(), vs.end(), [k](const PatternViolation& v) { return v.kind == k; });
}

// Centers of a local star on the 3x3 patch graph: f at `mid`, neighbours at `n`,
// corner faces filled with far-away points (they never enter the star of f).
FaceDrawing star_drawing(C mid, std::array<C, 4> n) {
  const SurfaceGraph g = build_square_grid_patch(3, 3);
  std::map<FaceId, ExtendedComplex> pts;
  for (std::uint32_t f = 0; f < 9; ++f) pts.emplace(FaceId{f}, ExtendedComplex(C(100.0 + 7.0 * f, -50.0 + 3.0 * f)));
  pts[kCenterFace] = mid;
  const auto q = quad_view(g, kCenterFace);
  for (int k = 0; k < 4; ++k) pts[*q.sides[k].neighbour] = n[k];
  return FaceDrawing(g, pts);
}

}  // namespace

TEST(StarRatioFieldTest, RegularLatticeIsOne) {
  const auto p = make_regular_torus_pattern(4, 4);
  const auto field = pattern_star_ratios(p.centers());
  EXPECT_EQ(field.values.size(), 16u);
  for (const auto& [f, z] : field.values) EXPECT_LE(std::abs(z.value() - 1.0), 1e-12);
  EXPECT_TRUE(field.all_real_positive());
}

TEST(StarRatioFieldTest, StretchedLatticeAlternates) {
  const auto g = build_square_grid_torus(4, 4);
  std::map<FaceId, ExtendedComplex> pts;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) pts.emplace(FaceId{static_cast<std::uint32_t>(i * 4 + j)}, ExtendedComplex(C(2.0 * (j + 1), i + 1)));
  const FaceDrawing d(g, pts, Periods{C(8.0, 0.0), C(0.0, 4.0)});
  const auto field = pattern_star_ratios(d);
  const auto cls = face_two_coloring(g);
  std::set<double> seen;
  for (const auto& [f, z] : field.values) {
    const double x = z.real();
    EXPECT_NEAR(z.imag(), 0.0, 1e-12);
    EXPECT_TRUE(std::abs(x - 4.0) < 1e-12 || std::abs(x - 0.25) < 1e-12) << x;
    // Neighbours carry reciprocal values.
    for (const auto& s : g.sides(f)) EXPECT_NEAR(field.values.at(*s.neighbour).real() * x, 1.0, 1e-12);
    seen.insert(std::round(x * 100) / 100);
    (void)cls;
  }
  EXPECT_EQ(seen.size(), 2u);
}

TEST(StarRatioFieldTest, ClassificationThresholds) {
  EXPECT_EQ(classify_star_ratio(ExtendedComplex(C(2.0, 1e-12))), StarRatioClass::real_positive);
  EXPECT_EQ(classify_star_ratio(ExtendedComplex(C(-2.0, 1e-12))), StarRatioClass::real);
  EXPECT_EQ(classify_star_ratio(ExtendedComplex(C(2.0, 1e-6))), StarRatioClass::generic);
}

TEST(ValidatePatternTest, RegularIsValid) {
  EXPECT_TRUE(validate_pattern(make_regular_torus_pattern(4, 4)).empty());
  EXPECT_TRUE(validate_pattern(make_regular_patch_pattern(3, 5)).empty());
}

TEST(ValidatePatternTest, PerturbedVertexBreaksConcyclicity) {
  const auto p = make_regular_torus_pattern(4, 4);
  auto vs = p.vertices();
  vs[VertexId{5}] = ExtendedComplex(vs[VertexId{5}].value() + 0.1);
  const CirclePattern bad(p.centers(), vs);
  const auto v = validate_pattern(bad);
  EXPECT_TRUE(has_kind(v, PatternViolationKind::NotConcyclic));
  int count = 0;
  for (const auto& x : v) count += x.kind == PatternViolationKind::NotConcyclic;
  EXPECT_EQ(count, 4);
}

TEST(ValidatePatternTest, CollinearFaceIsALine) {
  const SurfaceGraph g = build_square_grid_patch(1, 1);
  std::map<VertexId, ExtendedComplex> vs{{VertexId{0}, 0.0}, {VertexId{1}, 1.0}, {VertexId{3}, 3.0}, {VertexId{2}, 2.0}};
  const CirclePattern p(FaceDrawing(g, {{FaceId{0}, kInfinity}}), vs);
  EXPECT_TRUE(validate_pattern(p).empty());
  EXPECT_TRUE(p.face_circle(FaceId{0}).is_line());
}

TEST(ValidatePatternTest, RandomHandRolledPatternsAreValid) {
  oracle::Rng rng(101);
  for (int t = 0; t < 20; ++t) {
    const auto p = oracle::random_patch_pattern(4, 5, rng);
    for (const auto& [f, face] : p.graph().faces()) {
      const auto pts = p.face_vertex_points(f);
      const C m = p.centers().at(f).value();
      const double r = std::abs(pts[0].value() - m);
      for (const auto& z : pts) EXPECT_LE(std::abs(std::abs(z.value() - m) - r), 1e-9 * r);
    }
  }
}

TEST(ReconstructionTest, RegularCentersReproduceRegularPattern) {
  const auto reg = make_regular_patch_pattern(3, 3);
  const auto p = propagate_from_centers(reg.centers(), VertexId{0}, ExtendedComplex(C(0.5, 0.5)));
  EXPECT_LE(oracle::max_displacement(reg, p), 1e-12);
}

TEST(ReconstructionTest, OtherSeedGivesAnotherPatternWithSameCenters) {
  const auto reg = make_regular_patch_pattern(3, 3);
  const auto p = propagate_from_centers(reg.centers(), VertexId{0}, ExtendedComplex(C(0.3, 0.5)));
  EXPECT_TRUE(validate_pattern(p).empty());
  EXPECT_EQ(p.centers().points(), reg.centers().points());
  EXPECT_GT(std::abs(p.vertex_point(VertexId{5}).value() - reg.vertex_point(VertexId{5}).value()), 1e-3);
}

TEST(ReconstructionTest, RandomPatternsRoundTripThroughCenters) {
  oracle::Rng rng(103);
  for (int t = 0; t < 20; ++t) {
    const auto p = oracle::random_patch_pattern(3, 4, rng);
    const auto q = propagate_from_centers(p.centers(), VertexId{6}, p.vertex_point(VertexId{6}));
    for (const auto& [v, z] : p.vertices()) {
      if (p.graph().is_boundary_vertex(v) && p.graph().degree(v) == 2) continue;
      EXPECT_LE(relative_distance(z, q.vertex_point(v)), 1e-9);
    }
  }
}

TEST(ReconstructionTest, TorusRegularCloses) {
  const auto reg = make_regular_torus_pattern(4, 4);
  const auto p = propagate_from_centers(reg.centers(), VertexId{0}, ExtendedComplex(C(0.5, 0.5)));
  EXPECT_LE(oracle::max_displacement(reg, p), 1e-12);
}

TEST(ReconstructionTest, NonRealStarRatiosRejected) {
  const auto reg = make_regular_patch_pattern(3, 3);
  auto pts = reg.centers().points();
  pts[kCenterFace] = ExtendedComplex(C(2.1, 1.8));
  const FaceDrawing d(reg.graph(), pts);
  EXPECT_EQ(code_of([&] { propagate_from_centers(d, VertexId{0}, ExtendedComplex(C(0.5, 0.5))); }),
            ErrorCode::NonRealStarRatios);
}

TEST(ReconstructionTest, CoincidentAdjacentCentersRejected) {
  const auto reg = make_regular_patch_pattern(3, 3);
  auto pts = reg.centers().points();
  pts[FaceId{1}] = pts[kCenterFace];
  const FaceDrawing d(reg.graph(), pts);
  const ErrorCode c = code_of([&] { propagate_from_centers(d, VertexId{0}, ExtendedComplex(C(0.5, 0.5))); });
  EXPECT_TRUE(c == ErrorCode::DegenerateReflectionLine || c == ErrorCode::IndeterminateRatio) << to_string(c);
}

TEST(MiquelMoveTest, RegularPatternIsFixed) {
  const auto reg = make_regular_torus_pattern(4, 4);
  for (std::uint32_t f = 0; f < 16; ++f) {
    const auto q = miquel_move(reg, FaceId{f});
    EXPECT_LE(std::abs(q.centers().at(FaceId{f}).value() - reg.centers().at(FaceId{f}).value()), 1e-12);
    for (const auto& c : q.graph().corners(FaceId{f})) {
      const C z = q.vertex_point(c.vertex).value() + q.periods().lift(c.offset);
      bool found = false;
      for (const auto& d : reg.face_vertex_points(FaceId{f})) found = found || std::abs(d.value() - z) < 1e-12;
      EXPECT_TRUE(found);
    }
  }
}

TEST(MiquelMoveTest, AgreesWithMobiusOnRandomStars) {
  oracle::Rng rng(107);
  for (int t = 0; t < 200; ++t) {
    const auto p = oracle::random_patch_pattern(3, 3, rng);
    const auto q = miquel_move(p, kCenterFace);
    const auto qv = quad_view(p.graph(), kCenterFace);
    std::array<C, 4> n;
    for (int k = 0; k < 4; ++k) n[k] = p.centers().at(*qv.sides[k].neighbour).value();
    const C expected = oracle::mutation_image(n[0], n[1], n[2], n[3], p.centers().at(kCenterFace).value());
    EXPECT_LE(relative_distance(q.centers().at(kCenterFace), expected), 1e-8);
    // Star-ratio preserved with the same four neighbours.
    EXPECT_LE(oracle::rel(oracle::star_ratio(p.centers().at(kCenterFace).value(), n[0], n[1], n[2], n[3]),
                          oracle::star_ratio(q.centers().at(kCenterFace).value(), n[0], n[1], n[2], n[3])),
              1e-8);
    // Others untouched.
    for (const auto& [f, z] : p.centers().points()) {
      if (f != kCenterFace) EXPECT_EQ(q.centers().at(f), z);
    }
    EXPECT_TRUE(validate_pattern(q).empty());
  }
}

TEST(MiquelMoveTest, NewCornersAreReflections) {
  oracle::Rng rng(109);
  for (int t = 0; t < 100; ++t) {
    const auto p = oracle::random_patch_pattern(3, 3, rng);
    const auto q = miquel_move(p, kCenterFace);
    const auto qv = quad_view(p.graph(), kCenterFace);
    const auto old_pts = p.face_vertex_points(kCenterFace);
    std::set<std::pair<double, double>> expected;
    for (int k = 0; k < 4; ++k) {
      const C m1 = p.centers().at(*qv.sides[k].neighbour).value();
      const C m2 = p.centers().at(*qv.sides[(k + 1) % 4].neighbour).value();
      const C z = oracle::second_point(m1, m2, p.vertex_point(qv.corners[k].vertex).value());
      bool found = false;
      for (const auto& w : q.face_vertex_points(kCenterFace)) found = found || oracle::rel(w.value(), z) < 1e-9;
      EXPECT_TRUE(found);
    }
    (void)old_pts;
  }
}

TEST(MiquelMoveTest, DoubleMoveRestores) {
  oracle::Rng rng(113);
  for (int t = 0; t < 50; ++t) {
    const auto p = oracle::random_patch_pattern(3, 3, rng);
    const auto back = miquel_move(miquel_move(p, kCenterFace), kCenterFace);
    EXPECT_EQ(back.graph(), p.graph());
    EXPECT_LE(oracle::max_displacement(p, back), 1e-7);
  }
}

TEST(MiquelMoveTest, TorusDoubleMoveRestores) {
  const auto p = generate_kasteleyn_cauchy_data(4, 4, 5);
  for (std::uint32_t f : {0u, 5u, 10u, 15u}) {
    const auto back = miquel_move(miquel_move(p, FaceId{f}), FaceId{f});
    EXPECT_EQ(back.graph(), p.graph());
    EXPECT_LE(oracle::max_displacement(p, back), 1e-7);
  }
}

TEST(MiquelMoveTest, RadiusIndependence) {
  oracle::Rng rng(127);
  for (int t = 0; t < 20; ++t) {
    const auto p = oracle::random_patch_pattern(3, 3, rng);
    const C anchor = p.vertex_point(VertexId{5}).value();
    std::vector<C> moved;
    for (int s = 0; s < 10; ++s) {
      const C seed = anchor + 0.05 * rng.point();
      const auto q = propagate_from_centers(p.centers(), VertexId{5}, ExtendedComplex(seed));
      moved.push_back(miquel_move(q, kCenterFace).centers().at(kCenterFace).value());
    }
    for (const C& z : moved) EXPECT_LE(oracle::rel(z, moved[0]), 1e-8);
  }
}

TEST(MiquelMoveTest, BoundaryFaceIsInvalid) {
  const auto p = make_regular_patch_pattern(3, 3);
  EXPECT_EQ(code_of([&] { miquel_move(p, FaceId{0}); }), ErrorCode::InvalidFace);
}

TEST(MobiusMoveTest, Examples) {
  const auto d0 = mobius_mutation_move(star_drawing(0.0, {1.0, C(0, 1), -1.0, C(0, -1)}), kCenterFace);
  EXPECT_LE(std::abs(d0.at(kCenterFace).value()), 1e-15);
  const auto d1 = mobius_mutation_move(star_drawing(0.2, {1.0, C(0, 1), -1.0, C(0, -1)}), kCenterFace);
  EXPECT_LE(std::abs(d1.at(kCenterFace).value() + 0.2), 1e-15);
}

TEST(MobiusMoveTest, ConsecutiveCoincidenceRejected) {
  EXPECT_EQ(code_of([&] { mobius_mutation_move(star_drawing(0.2, {1.0, 1.0, -1.0, C(0, -1)}), kCenterFace); }),
            ErrorCode::ConsecutiveCoincidence);
}

// sr after the move: 1/t at f, t(1+t_f) on neighbours the dual edge points
// into and t/(1+1/t_f) on the others (one factor per shared side).
TEST(MobiusMoveTest, StarRatioUpdateRule) {
  oracle::Rng rng(131);
  const auto g = build_square_grid_torus(4, 4);
  for (int t = 0; t < 50; ++t) {
    std::map<FaceId, ExtendedComplex> pts;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        pts.emplace(FaceId{static_cast<std::uint32_t>(i * 4 + j)}, ExtendedComplex(C(j + 1, i + 1) + 0.3 * rng.point()));
    const FaceDrawing d(g, pts, Periods{C(4, 0), C(0, 4)});
    const FaceId f{static_cast<std::uint32_t>(rng.integer(0, 15))};
    const auto before = pattern_star_ratios(d);
    const auto moved = mobius_mutation_move(d, f);
    const auto after = pattern_star_ratios(moved);
    const C tf = before.values.at(f).value();
    std::map<FaceId, C> expected;
    for (const auto& [h, z] : before.values) expected[h] = z.value();
    expected[f] = 1.0 / tf;
    for (const auto& s : g.sides(f)) {
      expected[*s.neighbour] *= s.direction == DualDirection::outgoing ? (1.0 + tf) : 1.0 / (1.0 + 1.0 / tf);
    }
    for (const auto& [h, z] : after.values) EXPECT_LE(oracle::rel(z.value(), expected.at(h)), 1e-9);
  }
}

TEST(CliffordPointTest, AgreesWithMobius) {
  oracle::Rng rng(137);
  for (int t = 0; t < 200; ++t) {
    const C mid = 0.3 * rng.point();
    std::array<C, 4> n;
    for (int k = 0; k < 4; ++k) n[k] = std::polar(rng.uniform(0.5, 2.0), k * M_PI / 2 + rng.uniform(-0.6, 0.6));
    const auto d = star_drawing(mid, n);
    const auto geometric = clifford_point_geometric(d, kCenterFace);
    EXPECT_LE(relative_distance(geometric, oracle::mutation_image(n[0], n[1], n[2], n[3], mid)), 1e-8);
  }
}

TEST(CliffordPointTest, ConcyclicRejected) {
  const auto d = star_drawing(C(0.6, 0.8), {1.0, C(0, 1), -1.0, C(0, -1)});
  EXPECT_EQ(code_of([&] { clifford_point_geometric(d, kCenterFace); }), ErrorCode::ConcyclicDegenerate);
}

TEST(CliffordPointTest, MatchesConfigurationFromCircles) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto pencil = random_pencil(seed);
    const auto cfg = build_c4(pencil.base, pencil.circles);
    const auto d = star_drawing(cfg.points.at(0).value(),
                                {cfg.points.at(subset({1, 2})).value(), cfg.points.at(subset({2, 3})).value(),
                                 cfg.points.at(subset({3, 4})).value(), cfg.points.at(subset({1, 4})).value()});
    EXPECT_LE(relative_distance(clifford_point_geometric(d, kCenterFace), cfg.points.at(subset({1, 2, 3, 4}))), 1e-8);
  }
}

TEST(RealityLemma, RandomPatternsHaveRealStarRatios) {
  oracle::Rng rng(139);
  for (int t = 0; t < 30; ++t) {
    const auto p = oracle::random_patch_pattern(4, 4, rng, 0.6);
    for (const auto& [f, z] : pattern_star_ratios(p.centers()).values) {
      EXPECT_LE(std::abs(z.imag()), 1e-9 * std::abs(z.value()));
    }
  }
}
