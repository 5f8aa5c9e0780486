#include <gtest/gtest.h>

#include "miquel/error.hpp"
#include "miquel/geometry.hpp"
#include "oracles.hpp"

using namespace miquel;
using oracle::C;

namespace {

const C I{0.0, 1.0};

void expect_near(const ExtendedComplex& got, C want, double tol = 1e-12) {
  ASSERT_FALSE(got.is_infinite());
  EXPECT_LE(std::abs(got.value() - want), tol * std::max(1.0, std::abs(want))) << got.real() << "," << got.imag();
}

MobiusMap random_map(oracle::Rng& rng) {
  for (;;) {
    MobiusMap m(rng.point(2), rng.point(2), rng.point(2), rng.point(2));
    if (std::abs(m.determinant()) > 0.1) return m;
  }
}

}  // namespace

TEST(ExtendedComplexTest, RejectsNonFiniteCoordinates) {
  EXPECT_THROW(ExtendedComplex(std::nan(""), 0.0), Error);
  EXPECT_THROW(ExtendedComplex(HUGE_VAL, 0.0), Error);
  EXPECT_THROW(kInfinity.value(), Error);
  EXPECT_TRUE(kInfinity == ExtendedComplex::infinity());
  EXPECT_TRUE((-kInfinity).is_infinite());
}

TEST(ExtendedComplexTest, CoincidenceIsScaled) {
  EXPECT_TRUE(coincident(ExtendedComplex(1.0), ExtendedComplex(1.0 + 1e-13)));
  EXPECT_FALSE(coincident(ExtendedComplex(1.0), ExtendedComplex(1.0 + 1e-10)));
  EXPECT_TRUE(coincident(ExtendedComplex(1e6), ExtendedComplex(1e6 + 1e-7)));
  EXPECT_FALSE(coincident(kInfinity, ExtendedComplex(1e300)));
  EXPECT_TRUE(coincident(kInfinity, kInfinity));
}

TEST(CrossRatioTest, PinnedNormalization) {
  expect_near(cross_ratio(0.0, 1.0, kInfinity, 2.0), 0.5);
  expect_near(cross_ratio(3.0, 3.0, 1.0 + I, 5.0), 0.0);
}

TEST(CrossRatioTest, IndeterminateWhenThreeCoincide) {
  try {
    cross_ratio(1.0, 1.0, 1.0, 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IndeterminateRatio);
  }
}

TEST(CrossRatioTest, MatchesDirectFormulaOnFinitePoints) {
  oracle::Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    const C a = rng.point(), b = rng.point(), c = rng.point(), d = rng.point();
    expect_near(cross_ratio(a, b, c, d), oracle::cross_ratio(a, b, c, d), 1e-12);
  }
}

TEST(CrossRatioTest, MobiusInvariance) {
  oracle::Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const MobiusMap m = random_map(rng);
    const C a = rng.point(), b = rng.point(), c = rng.point(), d = rng.point();
    const auto before = cross_ratio(a, b, c, d);
    const auto after = cross_ratio(m(a), m(b), m(c), m(d));
    EXPECT_LE(relative_distance(before, after), 1e-10);
  }
}

TEST(CrossRatioTest, StarRatioDecomposition) {
  oracle::Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const C z = rng.point(), w = rng.point(), z1 = rng.point(), z2 = rng.point(), z3 = rng.point(), z4 = rng.point();
    const C lhs = star_ratio(z, z1, z2, z3, z4).value() / star_ratio(w, z1, z2, z3, z4).value();
    const C rhs = cross_ratio(z, z1, w, z2).value() * cross_ratio(z, z3, w, z4).value();
    EXPECT_LE(oracle::rel(lhs, rhs), 1e-9);
  }
}

TEST(MultiRatioTest, AlternatingPairIsMinusOne) {
  expect_near(multi_ratio(0.5, 2.0 + I, 0.5, 2.0 + I, 0.5, 2.0 + I), -1.0);
}

TEST(MultiRatioTest, MenelausTransversal) {
  // Triangle 0, 1, i cut by the line through u and v.
  const C A = 0.0, B = 1.0, Cv = I;
  oracle::Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    const C u = rng.point(3), v = rng.point(3);
    auto meet = [&](C p, C q) {
      // Solve p + s (q - p) = u + r (v - u).
      const C d1 = q - p, d2 = v - u, rhs = u - p;
      const double det = d1.real() * (-d2.imag()) + d2.real() * d1.imag();
      const double s = (rhs.real() * (-d2.imag()) + d2.real() * rhs.imag()) / det;
      return p + s * d1;
    };
    const C X = meet(A, B), Y = meet(B, Cv), Z = meet(Cv, A);
    EXPECT_LE(std::abs(multi_ratio(A, X, B, Y, Cv, Z).value() + 1.0), 1e-8);
  }
}

TEST(MultiRatioTest, InvariantUnderInversion) {
  oracle::Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    std::array<C, 6> p;
    for (auto& z : p) z = rng.point() + C(0.05, 0.05);
    const auto m = multi_ratio(p[0], p[1], p[2], p[3], p[4], p[5]);
    const auto mi = multi_ratio(1.0 / p[0], 1.0 / p[1], 1.0 / p[2], 1.0 / p[3], 1.0 / p[4], 1.0 / p[5]);
    EXPECT_LE(relative_distance(m, mi), 1e-9);
  }
}

TEST(StarRatioTest, Examples) {
  expect_near(star_ratio(0.0, 1.0, I, -1.0, -I), 1.0);
  expect_near(star_ratio(kInfinity, 1.0, 2.0 + I, -3.0, I), -1.0);
  expect_near(star_ratio(0.0, 1.0, 2.0, 3.0, 4.0), -3.0 / 8.0);
}

TEST(StarRatioTest, GeneralDegreeMatchesQuadForm) {
  oracle::Rng rng(17);
  for (int t = 0; t < 100; ++t) {
    const C y = rng.point(), y1 = rng.point(), y2 = rng.point(), y3 = rng.point(), y4 = rng.point();
    const std::array<ExtendedComplex, 2> in{y1, y3};
    const std::array<ExtendedComplex, 2> out{y2, y4};
    EXPECT_LE(relative_distance(star_ratio(y, in, out), oracle::star_ratio(y, y1, y2, y3, y4)), 1e-12);
  }
}

TEST(MobiusMutationTest, SquareGivesNegation) {
  const MobiusMap m = mobius_mutation(1.0, I, -1.0, -I);
  // Coefficients (a, b, c, d) = (C2, C3, C1, -C2) with C1 = 0, C2 = -2, C3 = 0.
  EXPECT_NEAR(std::abs(m.a() - C(-2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m.b()), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m.c()), 0.0, 1e-15);
  expect_near(m(I), -I);
  expect_near(m(7.0 + 2.0 * I), -7.0 - 2.0 * I);
  EXPECT_TRUE(m(kInfinity).is_infinite());
}

TEST(MobiusMutationTest, DoubledPairSendsMidpointToInfinity) {
  const MobiusMap m = mobius_mutation(0.0, 1.0, 0.0, 1.0);
  EXPECT_NEAR(std::abs(m.c() - C(-2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m.a() - C(-1.0)), 0.0, 1e-15);
  expect_near(m(0.0), 0.0);
  expect_near(m(1.0), 1.0);
  EXPECT_TRUE(m(0.5).is_infinite());
}

TEST(MobiusMutationTest, ConsecutiveCoincidenceRejected) {
  try {
    mobius_mutation(1.0, 1.0, 2.0, 3.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConsecutiveCoincidence);
  }
}

TEST(MobiusMutationTest, DeterminantFactorization) {
  oracle::Rng rng(19);
  for (int t = 0; t < 200; ++t) {
    const C z1 = rng.point(), z2 = rng.point(), z3 = rng.point(), z4 = rng.point();
    const C det = mobius_mutation(z1, z2, z3, z4).determinant();
    const C product = (z1 - z2) * (z2 - z3) * (z3 - z4) * (z4 - z1);
    EXPECT_LE(oracle::rel(std::abs(det), std::abs(product)), 1e-10);
    // Sign settled by expansion: det = -C2^2 - C1 C3 is the negative of the product.
    EXPECT_LE(oracle::rel(det, -product), 1e-10);
  }
}

TEST(MobiusMutationTest, PropertiesOnRandomQuadruples) {
  oracle::Rng rng(23);
  for (int t = 0; t < 500; ++t) {
    const C z1 = rng.point(), z2 = rng.point(), z3 = rng.point(), z4 = rng.point(), z = rng.point();
    const MobiusMap m = mobius_mutation(z1, z2, z3, z4);
    EXPECT_EQ(m.trace(), C(0.0));
    EXPECT_LE(relative_distance(m(m(z)), z), 1e-9);
    EXPECT_LE(relative_distance(m(z1), z3), 1e-9);
    EXPECT_LE(relative_distance(m(z2), z4), 1e-9);
    EXPECT_LE(relative_distance(m(z3), z1), 1e-9);
    EXPECT_LE(relative_distance(m(z4), z2), 1e-9);
    // Independent oracle for the image.
    EXPECT_LE(relative_distance(m(z), oracle::mutation_image(z1, z2, z3, z4, z)), 1e-9);
    EXPECT_LE(relative_distance(star_ratio(z, z1, z2, z3, z4), star_ratio(m(z), z1, z2, z3, z4)), 1e-9);
  }
}

TEST(MobiusMapTest, IdentityComposeInverse) {
  EXPECT_EQ(MobiusMap::identity()(7.0 + 2.0 * I), ExtendedComplex(7.0 + 2.0 * I));
  oracle::Rng rng(29);
  for (int t = 0; t < 50; ++t) {
    const MobiusMap m = random_map(rng), n = random_map(rng);
    const C z = rng.point();
    EXPECT_LE(relative_distance(m.inverse()(m(z)), z), 1e-9);
    EXPECT_LE(relative_distance(m.compose(n)(z), m(n(z))), 1e-9);
  }
  const MobiusMap m(1.0, 2.0, 3.0, 4.0);
  expect_near(m(kInfinity), 1.0 / 3.0);
  EXPECT_TRUE(m(-4.0 / 3.0).is_infinite());
}

TEST(CircleTest, Circumcircle) {
  const Circle c = circumcircle(1.0, I, -1.0);
  ASSERT_FALSE(c.is_line());
  EXPECT_NEAR(std::abs(c.center()), 0.0, 1e-14);
  EXPECT_NEAR(c.radius(), 1.0, 1e-14);
  const Circle l = circumcircle(0.0, 1.0, 2.0);
  ASSERT_TRUE(l.is_line());
  EXPECT_EQ(l.anchor_a(), C(0.0));
  EXPECT_EQ(l.anchor_b(), C(1.0));
  EXPECT_TRUE(circumcircle(0.0, 1.0, kInfinity).is_line());
  EXPECT_TRUE(circle_center_of(l).is_infinite());
  EXPECT_THROW(circumcircle(0.0, 0.0, 1.0), Error);
  oracle::Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    const C a = rng.point(), b = rng.point(), d = rng.point();
    const Circle k = circumcircle(a, b, d);
    EXPECT_LE(oracle::rel(k.center(), oracle::circumcenter(a, b, d)), 1e-9);
  }
}

TEST(CircleTest, CenterOf) {
  EXPECT_EQ(circle_center_of(Circle::make_circle(0.0, 1.0)), ExtendedComplex(0.0));
  EXPECT_EQ(circle_center_of(Circle::make_circle(2.0 - I, 3.0)), ExtendedComplex(2.0 - I));
  EXPECT_THROW(Circle::make_circle(0.0, -1.0), Error);
  EXPECT_THROW(Circle::make_line(1.0, 1.0), Error);
}

TEST(IntersectionTest, Examples) {
  const auto two = intersect_circles(Circle::make_circle(0.0, 1.0), Circle::make_circle(1.0, 1.0));
  ASSERT_EQ(two.points.size(), 2u);
  EXPECT_FALSE(two.tangent);
  const C p{0.5, std::sqrt(3.0) / 2};
  const bool ordered = std::abs(two.points[0].value() - p) < 1e-12;
  expect_near(two.points[ordered ? 0 : 1], p);
  expect_near(two.points[ordered ? 1 : 0], std::conj(p));

  const auto touch = intersect_circles(Circle::make_circle(0.0, 1.0), Circle::make_circle(2.0, 1.0));
  ASSERT_EQ(touch.points.size(), 1u);
  EXPECT_TRUE(touch.tangent);
  expect_near(touch.points[0], 1.0);

  EXPECT_TRUE(intersect_circles(Circle::make_circle(0.0, 1.0), Circle::make_circle(5.0, 1.0)).points.empty());
  EXPECT_THROW(intersect_circles(Circle::make_circle(0.0, 1.0), Circle::make_circle(0.0, 1.0)), Error);
}

TEST(IntersectionTest, LinesMeetOnceAndAtInfinity) {
  const auto cross = intersect_circles(Circle::make_line(0.0, 1.0), Circle::make_line(I, 1.0 + 2.0 * I));
  ASSERT_EQ(cross.points.size(), 2u);
  expect_near(cross.points[0], -1.0);
  EXPECT_TRUE(cross.points[1].is_infinite());
  const auto parallel = intersect_circles(Circle::make_line(0.0, 1.0), Circle::make_line(I, 1.0 + I));
  ASSERT_EQ(parallel.points.size(), 1u);
  EXPECT_TRUE(parallel.points[0].is_infinite());
}

TEST(IntersectionTest, RandomPairsLieOnBoth) {
  oracle::Rng rng(37);
  for (int t = 0; t < 200; ++t) {
    const Circle a = Circle::make_circle(rng.point(), rng.uniform(0.5, 1.5));
    const Circle b = Circle::make_circle(rng.point(), rng.uniform(0.5, 1.5));
    for (const auto& z : intersect_circles(a, b).points) {
      EXPECT_LE(a.residual(z), 1e-9);
      EXPECT_LE(b.residual(z), 1e-9);
    }
  }
}

TEST(ReflectionTest, Examples) {
  expect_near(reflect_in_line(I, 0.0, 1.0), -I);
  expect_near(reflect_in_line(3.0 + 4.0 * I, 0.0, I), -3.0 + 4.0 * I);
  EXPECT_TRUE(reflect_in_line(kInfinity, 0.0, 1.0).is_infinite());
  EXPECT_THROW(reflect_in_line(I, 2.0, 2.0), Error);
  oracle::Rng rng(41);
  for (int t = 0; t < 100; ++t) {
    const C p = rng.point(), a = rng.point(), b = rng.point();
    EXPECT_LE(relative_distance(reflect_in_line(reflect_in_line(p, a, b), a, b), p), 1e-12);
  }
}

TEST(SecondIntersectionTest, FarthestPointAndTangency) {
  const Circle a = Circle::make_circle(0.0, 1.0);
  const Circle b = Circle::make_circle(1.0, 1.0);
  const C p{0.5, std::sqrt(3.0) / 2};
  expect_near(second_intersection(a, b, p), std::conj(p));
  expect_near(second_intersection(a, Circle::make_circle(2.0, 1.0), 1.0), 1.0);
  oracle::Rng rng(43);
  for (int t = 0; t < 100; ++t) {
    const C m1 = rng.point(), m2 = rng.point() + 2.0, q = rng.point();
    const Circle c1 = Circle::make_circle(m1, std::abs(q - m1));
    const Circle c2 = Circle::make_circle(m2, std::abs(q - m2));
    EXPECT_LE(relative_distance(second_intersection(c1, c2, q), oracle::second_point(m1, m2, q)), 1e-9);
  }
}

TEST(SecondIntersectionTest, NearlyTangentCircles) {
  oracle::Rng rng(47);
  for (int t = 0; t < 200; ++t) {
    const C q = rng.point(), dir = std::polar(1.0, rng.uniform(0.0, 6.28));
    const double tilt = std::pow(10.0, rng.uniform(-9.0, -3.0));
    const C m1 = q - dir * rng.uniform(0.5, 1.5);
    const C m2 = q + dir * std::polar(rng.uniform(0.5, 1.5), tilt);
    const Circle c1 = Circle::make_circle(m1, std::abs(q - m1));
    const Circle c2 = Circle::make_circle(m2, std::abs(q - m2));
    const auto x = second_intersection(c1, c2, q);
    EXPECT_LE(c1.residual(x), 1e-12);
    EXPECT_LE(c2.residual(x), 1e-12);
    EXPECT_LE(relative_distance(x, oracle::second_point(m1, m2, q)), 1e-12);
  }
  // A circle and a line through a common point.
  const Circle c = Circle::make_circle(C(0, 1), 1.0);
  const Circle l = Circle::make_line(C(-1, 0), C(1, 2));
  const auto x = second_intersection(c, l, 0.0);
  EXPECT_LE(c.residual(x), 1e-12);
  EXPECT_LE(l.residual(x), 1e-12);
  EXPECT_GT(std::abs(x.value()), 0.5);
  EXPECT_TRUE(second_intersection(l, Circle::make_line(C(0, 0), C(1, -1)), 0.0).is_infinite());
}
