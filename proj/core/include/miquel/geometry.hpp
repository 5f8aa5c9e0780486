#pragma once

#include <complex>
#include <span>
#include <vector>

namespace miquel {

using Complex = std::complex<double>;

// Absolute coincidence threshold on unit-scale data; scaled by magnitude for larger values.
inline constexpr double kCoincidenceTol = 1e-12;
// Relative tolerance for concyclicity, reality and tangency decisions.
inline constexpr double kRelativeTol = 1e-9;

// A point of the Riemann sphere.
class ExtendedComplex {
 public:
  constexpr ExtendedComplex() = default;
  ExtendedComplex(double re, double im = 0.0);
  ExtendedComplex(Complex z);

  static ExtendedComplex infinity() noexcept;

  bool is_infinite() const noexcept { return infinite_; }
  bool is_finite() const noexcept { return !infinite_; }
  // Throws InvalidInput on the point at infinity.
  Complex value() const;
  double real() const { return value().real(); }
  double imag() const { return value().imag(); }

  ExtendedComplex operator-() const;

  // Bitwise comparison; use coincident() or approx_equal() for tolerant checks.
  friend bool operator==(const ExtendedComplex& a, const ExtendedComplex& b) noexcept {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.z_ == b.z_;
  }

 private:
  Complex z_{0.0, 0.0};
  bool infinite_ = false;
};

inline const ExtendedComplex kInfinity = ExtendedComplex::infinity();

// |a-b| <= kCoincidenceTol * max(1, |a|, |b|); infinity coincides only with itself.
bool coincident(const ExtendedComplex& a, const ExtendedComplex& b) noexcept;
// |a-b| <= tol * max(1, |a|, |b|).
bool approx_equal(const ExtendedComplex& a, const ExtendedComplex& b,
                  double tol = kRelativeTol) noexcept;
// |a-b| / max(|a|, |b|, tiny); 0 when both infinite, +inf when exactly one is.
double relative_distance(const ExtendedComplex& a, const ExtendedComplex& b) noexcept;
// Distance on the Riemann sphere of diameter 1; finite for infinity.
double chordal_distance(const ExtendedComplex& a, const ExtendedComplex& b) noexcept;
// Translation that leaves infinity fixed.
ExtendedComplex translate(const ExtendedComplex& z, Complex t);

// A factor (lhs - rhs) of a ratio of products.
struct Difference {
  ExtendedComplex lhs;
  ExtendedComplex rhs;
};

// Product of numerator differences over product of denominator differences, with
// infinite factors cancelling pairwise and division by zero yielding infinity.
ExtendedComplex difference_ratio(std::span<const Difference> numerator,
                                 std::span<const Difference> denominator);

ExtendedComplex cross_ratio(const ExtendedComplex& a, const ExtendedComplex& b,
                            const ExtendedComplex& c, const ExtendedComplex& d);
ExtendedComplex multi_ratio(const ExtendedComplex& p1, const ExtendedComplex& p2,
                            const ExtendedComplex& p3, const ExtendedComplex& p4,
                            const ExtendedComplex& p5, const ExtendedComplex& p6);
ExtendedComplex star_ratio(const ExtendedComplex& y, const ExtendedComplex& y1,
                           const ExtendedComplex& y2, const ExtendedComplex& y3,
                           const ExtendedComplex& y4);
// -prod(incoming - y) / prod(outgoing - y) for stars of any degree.
ExtendedComplex star_ratio(const ExtendedComplex& y, std::span<const ExtendedComplex> incoming,
                           std::span<const ExtendedComplex> outgoing);

class Circle {
 public:
  enum class Kind { circle, line };

  static Circle make_circle(Complex center, double radius);
  static Circle make_line(Complex a, Complex b);

  Kind kind() const noexcept { return kind_; }
  bool is_line() const noexcept { return kind_ == Kind::line; }
  // Center and radius of a true circle; anchors of a line.
  Complex center() const;
  double radius() const;
  Complex anchor_a() const;
  Complex anchor_b() const;

  // Distance of p from the point set, relative to the radius (circles) or to
  // max(1, anchor scale) (lines). Infinity lies on lines only.
  double residual(const ExtendedComplex& p) const;
  bool contains(const ExtendedComplex& p, double tol = kRelativeTol) const {
    return residual(p) <= tol;
  }
  // Length scale used by tolerance checks.
  double scale() const noexcept;

  friend bool operator==(const Circle&, const Circle&) = default;

 private:
  Circle(Kind kind, Complex p, Complex q, double r) : kind_(kind), p_(p), q_(q), r_(r) {}
  Kind kind_;
  Complex p_;  // center or first anchor
  Complex q_;  // unused or second anchor
  double r_;
};

struct Intersection {
  std::vector<ExtendedComplex> points;
  bool tangent = false;
};

class MobiusMap {
 public:
  MobiusMap() = default;
  MobiusMap(Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {}

  static MobiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }

  Complex a() const noexcept { return a_; }
  Complex b() const noexcept { return b_; }
  Complex c() const noexcept { return c_; }
  Complex d() const noexcept { return d_; }
  Complex determinant() const noexcept { return a_ * d_ - b_ * c_; }
  Complex trace() const noexcept { return a_ + d_; }
  bool is_degenerate() const noexcept;

  ExtendedComplex operator()(const ExtendedComplex& z) const;
  MobiusMap inverse() const { return {d_, -b_, -c_, a_}; }
  // (this ∘ other)(z) = this(other(z)).
  MobiusMap compose(const MobiusMap& other) const;

 private:
  Complex a_{1.0}, b_{0.0}, c_{0.0}, d_{1.0};
};

ExtendedComplex apply_mobius(const MobiusMap& m, const ExtendedComplex& z);

// Mutation map z -> (z C2 + C3) / (z C1 - C2) of four cyclically ordered points.
MobiusMap mobius_mutation(const ExtendedComplex& z1, const ExtendedComplex& z2,
                          const ExtendedComplex& z3, const ExtendedComplex& z4);

Circle circumcircle(const ExtendedComplex& p, const ExtendedComplex& q, const ExtendedComplex& r);
Intersection intersect_circles(const Circle& c1, const Circle& c2);
ExtendedComplex reflect_in_line(const ExtendedComplex& p, const ExtendedComplex& a,
                                const ExtendedComplex& b);
ExtendedComplex circle_center_of(const Circle& c);

// Intersection of c1 and c2 other than `known`: the point farthest from it, or
// `known` itself under tangency.
ExtendedComplex second_intersection(const Circle& c1, const Circle& c2, const ExtendedComplex& known);

}  // namespace miquel
