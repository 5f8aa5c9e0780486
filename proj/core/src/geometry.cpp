#include "miquel/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "miquel/error.hpp"

namespace miquel {

namespace {

constexpr double kEvalTol = 1e-14;

double scale_of(const ExtendedComplex& a, const ExtendedComplex& b) {
  return std::max({1.0, std::abs(a.value()), std::abs(b.value())});
}

double cross(Complex u, Complex v) { return u.real() * v.imag() - u.imag() * v.real(); }

}  // namespace

ExtendedComplex::ExtendedComplex(double re, double im) : ExtendedComplex(Complex(re, im)) {}

ExtendedComplex::ExtendedComplex(Complex z) : z_(z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorCode::InvalidInput, "non-finite coordinates; use ExtendedComplex::infinity()");
  }
}

ExtendedComplex ExtendedComplex::infinity() noexcept {
  ExtendedComplex z;
  z.infinite_ = true;
  return z;
}

Complex ExtendedComplex::value() const {
  if (infinite_) throw Error(ErrorCode::InvalidInput, "value() of the point at infinity");
  return z_;
}

ExtendedComplex ExtendedComplex::operator-() const {
  if (infinite_) return *this;
  return ExtendedComplex(-z_);
}

bool coincident(const ExtendedComplex& a, const ExtendedComplex& b) noexcept {
  return approx_equal(a, b, kCoincidenceTol);
}

bool approx_equal(const ExtendedComplex& a, const ExtendedComplex& b, double tol) noexcept {
  if (a.is_infinite() || b.is_infinite()) return a.is_infinite() && b.is_infinite();
  return std::abs(a.value() - b.value()) <= tol * scale_of(a, b);
}

double relative_distance(const ExtendedComplex& a, const ExtendedComplex& b) noexcept {
  if (a.is_infinite() || b.is_infinite()) {
    return a.is_infinite() && b.is_infinite() ? 0.0 : std::numeric_limits<double>::infinity();
  }
  const double m = std::max({std::abs(a.value()), std::abs(b.value()), 1e-300});
  return std::abs(a.value() - b.value()) / m;
}

double chordal_distance(const ExtendedComplex& a, const ExtendedComplex& b) noexcept {
  if (a.is_infinite() && b.is_infinite()) return 0.0;
  if (a.is_infinite()) return 1.0 / std::sqrt(1.0 + std::norm(b.value()));
  if (b.is_infinite()) return 1.0 / std::sqrt(1.0 + std::norm(a.value()));
  return std::abs(a.value() - b.value()) /
         std::sqrt((1.0 + std::norm(a.value())) * (1.0 + std::norm(b.value())));
}

ExtendedComplex translate(const ExtendedComplex& z, Complex t) {
  if (z.is_infinite()) return z;
  return ExtendedComplex(z.value() + t);
}

ExtendedComplex difference_ratio(std::span<const Difference> numerator,
                                 std::span<const Difference> denominator) {
  // Each infinite factor counts as one power of a formal large parameter with
  // sign +1 for (inf - q) and -1 for (q - inf); coincidences count as zeros.
  struct Tally {
    int infinities = 0;
    int zeros = 0;
    Complex product{1.0, 0.0};
  };
  auto tally = [](std::span<const Difference> factors) {
    Tally t;
    for (const auto& f : factors) {
      if (coincident(f.lhs, f.rhs)) {
        ++t.zeros;
      } else if (f.lhs.is_infinite()) {
        ++t.infinities;
      } else if (f.rhs.is_infinite()) {
        ++t.infinities;
        t.product = -t.product;
      } else {
        t.product *= f.lhs.value() - f.rhs.value();
      }
    }
    return t;
  };
  const Tally num = tally(numerator);
  const Tally den = tally(denominator);
  const int net = num.infinities - den.infinities;
  if (num.zeros > 0 && den.zeros > 0) {
    throw Error(ErrorCode::IndeterminateRatio, "0/0 in ratio of differences");
  }
  if (num.zeros > 0) {
    if (net > 0) throw Error(ErrorCode::IndeterminateRatio, "0*inf in ratio of differences");
    return ExtendedComplex(0.0);
  }
  if (den.zeros > 0) {
    if (net < 0) throw Error(ErrorCode::IndeterminateRatio, "inf/inf in ratio of differences");
    return kInfinity;
  }
  if (net > 0) return kInfinity;
  if (net < 0) return ExtendedComplex(0.0);
  return ExtendedComplex(num.product / den.product);
}

ExtendedComplex cross_ratio(const ExtendedComplex& a, const ExtendedComplex& b,
                            const ExtendedComplex& c, const ExtendedComplex& d) {
  const Difference num[] = {{a, b}, {c, d}};
  const Difference den[] = {{b, c}, {d, a}};
  return difference_ratio(num, den);
}

ExtendedComplex multi_ratio(const ExtendedComplex& p1, const ExtendedComplex& p2,
                            const ExtendedComplex& p3, const ExtendedComplex& p4,
                            const ExtendedComplex& p5, const ExtendedComplex& p6) {
  const Difference num[] = {{p1, p2}, {p3, p4}, {p5, p6}};
  const Difference den[] = {{p2, p3}, {p4, p5}, {p6, p1}};
  return difference_ratio(num, den);
}

ExtendedComplex star_ratio(const ExtendedComplex& y, const ExtendedComplex& y1,
                           const ExtendedComplex& y2, const ExtendedComplex& y3,
                           const ExtendedComplex& y4) {
  const ExtendedComplex in[] = {y1, y3};
  const ExtendedComplex out[] = {y2, y4};
  return star_ratio(y, in, out);
}

ExtendedComplex star_ratio(const ExtendedComplex& y, std::span<const ExtendedComplex> incoming,
                           std::span<const ExtendedComplex> outgoing) {
  std::vector<Difference> num;
  std::vector<Difference> den;
  num.reserve(incoming.size());
  den.reserve(outgoing.size());
  for (const auto& p : incoming) num.push_back({p, y});
  for (const auto& p : outgoing) den.push_back({p, y});
  return -difference_ratio(num, den);
}

Circle Circle::make_circle(Complex center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::InvalidInput, "circle radius must be positive and finite");
  }
  ExtendedComplex checked(center);
  return Circle(Kind::circle, checked.value(), Complex{}, radius);
}

Circle Circle::make_line(Complex a, Complex b) {
  if (coincident(ExtendedComplex(a), ExtendedComplex(b))) {
    throw Error(ErrorCode::CoincidentAnchors, "line anchors coincide");
  }
  return Circle(Kind::line, a, b, 0.0);
}

Complex Circle::center() const {
  if (is_line()) throw Error(ErrorCode::InvalidInput, "a line has no finite center");
  return p_;
}

double Circle::radius() const {
  if (is_line()) throw Error(ErrorCode::InvalidInput, "a line has no radius");
  return r_;
}

Complex Circle::anchor_a() const {
  if (!is_line()) throw Error(ErrorCode::InvalidInput, "a true circle has no anchors");
  return p_;
}

Complex Circle::anchor_b() const {
  if (!is_line()) throw Error(ErrorCode::InvalidInput, "a true circle has no anchors");
  return q_;
}

double Circle::scale() const noexcept {
  if (is_line()) return std::max({1.0, std::abs(p_), std::abs(q_)});
  return r_;
}

double Circle::residual(const ExtendedComplex& p) const {
  if (is_line()) {
    if (p.is_infinite()) return 0.0;
    const Complex u = q_ - p_;
    return std::abs(cross(u, p.value() - p_)) / std::abs(u) / scale();
  }
  if (p.is_infinite()) return std::numeric_limits<double>::infinity();
  return std::abs(std::abs(p.value() - p_) - r_) / r_;
}

bool MobiusMap::is_degenerate() const noexcept {
  const double m = std::abs(a_) * std::abs(d_) + std::abs(b_) * std::abs(c_);
  return !(std::abs(determinant()) > kCoincidenceTol * m);
}

ExtendedComplex MobiusMap::operator()(const ExtendedComplex& z) const {
  if (z.is_infinite()) {
    const double m = std::abs(a_) + std::abs(b_) + std::abs(c_) + std::abs(d_);
    if (std::abs(c_) <= kEvalTol * m) return kInfinity;
    return ExtendedComplex(a_ / c_);
  }
  const Complex w = z.value();
  const Complex num = a_ * w + b_;
  const Complex den = c_ * w + d_;
  if (std::abs(den) <= kEvalTol * (std::abs(c_) * std::abs(w) + std::abs(d_))) return kInfinity;
  return ExtendedComplex(num / den);
}

MobiusMap MobiusMap::compose(const MobiusMap& o) const {
  return {a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_,
          c_ * o.b_ + d_ * o.d_};
}

ExtendedComplex apply_mobius(const MobiusMap& m, const ExtendedComplex& z) { return m(z); }

MobiusMap mobius_mutation(const ExtendedComplex& z1, const ExtendedComplex& z2,
                          const ExtendedComplex& z3, const ExtendedComplex& z4) {
  const ExtendedComplex z[4] = {z1, z2, z3, z4};
  for (int k = 0; k < 4; ++k) {
    if (coincident(z[k], z[(k + 1) % 4])) {
      throw Error(ErrorCode::ConsecutiveCoincidence,
                  "consecutive points " + std::to_string(k + 1) + " and " +
                      std::to_string((k + 1) % 4 + 1) + " coincide");
    }
  }
  // Homogeneous coordinates [x : w]; infinity is [1 : 0].
  Complex x[4];
  Complex w[4];
  for (int k = 0; k < 4; ++k) {
    x[k] = z[k].is_infinite() ? Complex(1.0) : z[k].value();
    w[k] = z[k].is_infinite() ? Complex(0.0) : Complex(1.0);
  }
  const Complex c1 = x[0] * w[1] * w[2] * w[3] - w[0] * x[1] * w[2] * w[3] +
                     w[0] * w[1] * x[2] * w[3] - w[0] * w[1] * w[2] * x[3];
  const Complex c2 = x[0] * w[1] * x[2] * w[3] - w[0] * x[1] * w[2] * x[3];
  const Complex c3 = w[0] * x[1] * x[2] * x[3] - x[0] * w[1] * x[2] * x[3] +
                     x[0] * x[1] * w[2] * x[3] - x[0] * x[1] * x[2] * w[3];
  MobiusMap m(c2, c3, c1, -c2);
  if (m.is_degenerate()) throw Error(ErrorCode::DegenerateMap, "mutation map determinant vanishes");
  return m;
}

Circle circumcircle(const ExtendedComplex& p, const ExtendedComplex& q, const ExtendedComplex& r) {
  if (coincident(p, q) || coincident(q, r) || coincident(p, r)) {
    throw Error(ErrorCode::CoincidentPoints, "circumcircle of coincident points");
  }
  if (p.is_infinite()) return Circle::make_line(q.value(), r.value());
  if (q.is_infinite()) return Circle::make_line(p.value(), r.value());
  if (r.is_infinite()) return Circle::make_line(p.value(), q.value());
  const Complex b = q.value() - p.value();
  const Complex c = r.value() - p.value();
  const double x = cross(b, c);
  if (std::abs(x) <= kCoincidenceTol * std::abs(b) * std::abs(c)) {
    return Circle::make_line(p.value(), q.value());
  }
  const Complex w = (std::norm(b) * c - std::norm(c) * b) / Complex(0.0, 2.0 * x);
  return Circle::make_circle(p.value() + w, std::abs(w));
}

namespace {

Intersection circle_circle(const Circle& c1, const Circle& c2) {
  const Complex m1 = c1.center();
  const Complex m2 = c2.center();
  const double r1 = c1.radius();
  const double r2 = c2.radius();
  const double rmax = std::max(r1, r2);
  const double d = std::abs(m2 - m1);
  if (d <= kCoincidenceTol * rmax) {
    if (std::abs(r1 - r2) <= kCoincidenceTol * rmax) {
      throw Error(ErrorCode::IdenticalCircles, "intersection of identical circles");
    }
    return {};
  }
  const Complex u = (m2 - m1) / d;
  if (std::abs(d - (r1 + r2)) <= kRelativeTol * rmax) {
    return {{ExtendedComplex(m1 + r1 * u)}, true};
  }
  if (std::abs(d - std::abs(r1 - r2)) <= kRelativeTol * rmax) {
    return {{ExtendedComplex(r1 > r2 ? m1 + r1 * u : m1 - r1 * u)}, true};
  }
  if (d > r1 + r2 || d < std::abs(r1 - r2)) return {};
  const double a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
  const double h = std::sqrt(std::max(r1 * r1 - a * a, 0.0));
  const Complex base = m1 + a * u;
  const Complex off = Complex(0.0, h) * u;
  return {{ExtendedComplex(base + off), ExtendedComplex(base - off)}, false};
}

Intersection line_circle(const Circle& line, const Circle& circle) {
  const Complex a = line.anchor_a();
  const Complex u = (line.anchor_b() - a) / std::abs(line.anchor_b() - a);
  const Complex m = circle.center();
  const double r = circle.radius();
  const Complex foot = a + u * (std::real(std::conj(u) * (m - a)));
  const double dist = std::abs(m - foot);
  if (std::abs(dist - r) <= kRelativeTol * r) return {{ExtendedComplex(foot)}, true};
  if (dist > r) return {};
  const double h = std::sqrt(std::max(r * r - dist * dist, 0.0));
  return {{ExtendedComplex(foot + h * u), ExtendedComplex(foot - h * u)}, false};
}

Intersection line_line(const Circle& l1, const Circle& l2) {
  const Complex a1 = l1.anchor_a();
  const Complex u1 = l1.anchor_b() - a1;
  const Complex a2 = l2.anchor_a();
  const Complex u2 = l2.anchor_b() - a2;
  const double x = cross(u1, u2);
  if (std::abs(x) <= kCoincidenceTol * std::abs(u1) * std::abs(u2)) {
    if (l1.residual(ExtendedComplex(a2)) <= kCoincidenceTol &&
        l1.residual(ExtendedComplex(l2.anchor_b())) <= kCoincidenceTol) {
      throw Error(ErrorCode::IdenticalCircles, "intersection of identical lines");
    }
    return {{kInfinity}, true};
  }
  const double t = cross(a2 - a1, u2) / x;
  return {{ExtendedComplex(a1 + t * u1), kInfinity}, false};
}

}  // namespace

Intersection intersect_circles(const Circle& c1, const Circle& c2) {
  if (c1.is_line() && c2.is_line()) return line_line(c1, c2);
  if (c1.is_line()) return line_circle(c1, c2);
  if (c2.is_line()) return line_circle(c2, c1);
  return circle_circle(c1, c2);
}

ExtendedComplex reflect_in_line(const ExtendedComplex& p, const ExtendedComplex& a,
                                const ExtendedComplex& b) {
  if (a.is_infinite() || b.is_infinite()) {
    throw Error(ErrorCode::CoincidentAnchors, "reflection line needs two finite anchors");
  }
  if (coincident(a, b)) throw Error(ErrorCode::CoincidentAnchors, "reflection anchors coincide");
  if (p.is_infinite()) return p;
  const Complex d = b.value() - a.value();
  return ExtendedComplex(a.value() + d * std::conj((p.value() - a.value()) / d));
}

ExtendedComplex circle_center_of(const Circle& c) {
  if (c.is_line()) return kInfinity;
  return ExtendedComplex(c.center());
}

ExtendedComplex second_intersection(const Circle& c1, const Circle& c2,
                                    const ExtendedComplex& known) {
  // Through a common finite point the answer is a reflection, which stays
  // accurate when the circles are close to tangent.
  if (known.is_finite() && c1.contains(known, 1e-6) && c2.contains(known, 1e-6)) {
    const Complex z = known.value();
    if (c1.is_line() && c2.is_line()) {
      if (std::abs(cross(c1.anchor_b() - c1.anchor_a(), c2.anchor_b() - c2.anchor_a())) >
          kCoincidenceTol * std::abs(c1.anchor_b() - c1.anchor_a()) * std::abs(c2.anchor_b() - c2.anchor_a())) {
        return ExtendedComplex::infinity();
      }
    } else if (c1.is_line() || c2.is_line()) {
      const Circle& line = c1.is_line() ? c1 : c2;
      const Circle& round = c1.is_line() ? c2 : c1;
      const Complex u = line.anchor_b() - line.anchor_a();
      const Complex m = round.center();
      return reflect_in_line(z, m, m + Complex(0, 1) * u);
    } else if (!coincident(c1.center(), c2.center())) {
      return reflect_in_line(z, c1.center(), c2.center());
    }
  }
  const Intersection x = intersect_circles(c1, c2);
  if (x.points.empty()) {
    throw Error(ErrorCode::NumericalTangencyAmbiguity,
                "circles sharing a point do not intersect numerically");
  }
  if (x.tangent || x.points.size() == 1) return known;
  const double d0 = chordal_distance(x.points[0], known);
  const double d1 = chordal_distance(x.points[1], known);
  return d0 >= d1 ? x.points[0] : x.points[1];
}

}  // namespace miquel
