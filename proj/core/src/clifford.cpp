#include "miquel/clifford.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "concurrence.hpp"
#include "miquel/error.hpp"

namespace miquel {

namespace {

// Distance used for all point residuals: scale-relative when finite, chordal otherwise.
double point_gap(const ExtendedComplex& a, const ExtendedComplex& b, double scale) {
  if (a.is_finite() && b.is_finite()) return std::abs(a.value() - b.value()) / scale;
  return chordal_distance(a, b);
}

double configuration_scale(const CliffordConfiguration& cfg) {
  double s = 1.0;
  for (const auto& [k, p] : cfg.points) {
    if (p.is_finite()) s = std::max(s, std::abs(p.value()));
  }
  return s;
}

// For three circles a single tangency at the base still fixes c123; two
// tangencies are caught by the coincidence check on the pair points.
bool consecutive(int i, int j, int n) {
  if (n == 3) return false;
  return std::abs(i - j) == 1 || std::abs(i - j) == n - 1;
}

}  // namespace

Subset subset(std::initializer_list<int> elements) {
  Subset s = 0;
  for (int k : elements) s |= 1u << (k - 1);
  return s;
}

int subset_size(Subset s) { return std::popcount(s); }

std::string subset_label(Subset s) {
  std::string out;
  for (int k = 1; k <= 8; ++k) {
    if (s & (1u << (k - 1))) out += std::to_string(k);
  }
  return out;
}

ExtendedComplex CliffordConfiguration::label(Subset s) const {
  if (subset_size(s) % 2 == 0) return points.at(s);
  return centers.at(s);
}

CliffordConfiguration build_clifford(const ExtendedComplex& base, const std::vector<Circle>& circles) {
  const int n = static_cast<int>(circles.size());
  if (n != 3 && n != 4) throw Error(ErrorCode::InvalidInput, "Clifford configurations need 3 or 4 circles");
  for (int i = 0; i < n; ++i) {
    if (!circles[i].contains(base)) {
      throw Error(ErrorCode::InvalidInput, "circle " + std::to_string(i + 1) + " misses the base point");
    }
  }
  CliffordConfiguration cfg;
  cfg.n = n;
  cfg.points.emplace(0u, base);
  for (int i = 1; i <= n; ++i) {
    cfg.circles.emplace(subset({i}), circles[i - 1]);
    cfg.centers.emplace(subset({i}), circle_center_of(circles[i - 1]));
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const ExtendedComplex second = second_intersection(circles[i - 1], circles[j - 1], base);
      if (coincident(second, base) && consecutive(i, j, n)) {
        throw Error(ErrorCode::TangentAtBase,
                    "circles " + std::to_string(i) + " and " + std::to_string(j) + " are tangent at the base");
      }
      cfg.points.emplace(subset({i, j}), coincident(second, base) ? base : second);
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      for (int k = j + 1; k <= n; ++k) {
        const auto& a = cfg.points.at(subset({i, j}));
        const auto& b = cfg.points.at(subset({j, k}));
        const auto& c = cfg.points.at(subset({i, k}));
        if (coincident(a, b) || coincident(b, c) || coincident(a, c)) {
          throw Error(ErrorCode::TangentAtBase, "second intersections coincide; circle c" +
                                                    subset_label(subset({i, j, k})) + " is undetermined");
        }
        const Circle cijk = circumcircle(a, b, c);
        cfg.circles.emplace(subset({i, j, k}), cijk);
        cfg.centers.emplace(subset({i, j, k}), circle_center_of(cijk));
      }
    }
  }
  if (n == 4) {
    // c_ijk and c_ijl meet at p_ij and at p_1234.
    std::vector<Circle> triple;
    for (Subset s : {subset({1, 2, 3}), subset({1, 2, 4}), subset({1, 3, 4}), subset({2, 3, 4})}) {
      triple.push_back(cfg.circles.at(s));
    }
    std::vector<internal::SharedPoint> shared;
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t b = a + 1; b < 4; ++b) {
        // triple[a] leaves out element 4 - a
        const Subset pair = cfg.full() & ~(1u << (3 - a)) & ~(1u << (3 - b));
        shared.push_back({a, b, cfg.points.at(pair)});
      }
    }
    cfg.points.emplace(cfg.full(), internal::common_point(triple, shared, 1e-8, ErrorCode::ConcurrenceFailure));
  }
  return cfg;
}

CliffordConfiguration build_c4(const ExtendedComplex& base, const std::vector<Circle>& circles) {
  if (circles.size() != 4) throw Error(ErrorCode::InvalidInput, "build_c4 needs four circles");
  return build_clifford(base, circles);
}

CliffordConfiguration build_c3(const ExtendedComplex& base, const std::vector<Circle>& circles) {
  if (circles.size() != 3) throw Error(ErrorCode::InvalidInput, "build_c3 needs three circles");
  return build_clifford(base, circles);
}

double incidence_residual(const CliffordConfiguration& cfg) {
  double worst = 0.0;
  for (const auto& [i, p] : cfg.points) {
    for (int k = 0; k < cfg.n; ++k) {
      const Subset j = i ^ (1u << k);
      worst = std::max(worst, cfg.circles.at(j).residual(p));
    }
  }
  return worst;
}

double ShiftReport::max() const {
  return std::max({point_shift, circle_shift, vertex_star_ratio, center_star_ratio, map_independence});
}

ShiftReport verify_shift_identities(const CliffordConfiguration& cfg) {
  if (cfg.n != 4) throw Error(ErrorCode::InvalidInput, "shift identities need a C4 configuration");
  ShiftReport r;
  const double scale = configuration_scale(cfg);
  const Subset all = cfg.full();
  const Subset s12 = subset({1, 2}), s23 = subset({2, 3}), s34 = subset({3, 4}), s14 = subset({1, 4});
  const auto& v = cfg.points;
  const MobiusMap mob = mobius_mutation(v.at(s12), v.at(s23), v.at(s34), v.at(s14));

  for (const auto& [i, p] : v) r.point_shift = std::max(r.point_shift, point_gap(mob(p), v.at(i ^ all), scale));
  for (const auto& [j, c] : cfg.circles) {
    const Circle& target = cfg.circles.at(j ^ all);
    for (int k = 0; k < 4; ++k) {
      r.circle_shift = std::max(r.circle_shift, target.residual(mob(v.at(j ^ (1u << k)))));
    }
  }
  auto star_gap = [&](Subset origin, double& slot) {
    auto nb = [&](Subset d) { return cfg.label(origin ^ d); };
    try {
      const auto a = star_ratio(cfg.label(origin), nb(s12), nb(s23), nb(s34), nb(s14));
      const auto b = star_ratio(cfg.label(origin ^ all), nb(s12), nb(s23), nb(s34), nb(s14));
      slot = std::max(slot, relative_distance(a, b));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::IndeterminateRatio) throw;
      ++r.skipped;
    }
  };
  for (Subset origin = 0; origin <= all; ++origin) {
    star_gap(origin, subset_size(origin) % 2 == 0 ? r.vertex_star_ratio : r.center_star_ratio);
  }
  const Subset empty = 0;
  const MobiusMap others[] = {mobius_mutation(v.at(empty), v.at(s12), v.at(all), v.at(s34)),
                              mobius_mutation(v.at(empty), v.at(s23), v.at(all), v.at(s14))};
  for (const ExtendedComplex probe : {ExtendedComplex(0.3, 0.1), ExtendedComplex(2.0, -1.0), ExtendedComplex(0.0, -1.5)}) {
    for (const auto& m : others) r.map_independence = std::max(r.map_independence, point_gap(mob(probe), m(probe), scale));
  }
  return r;
}

double CrossRatioReport::max() const { return std::max({opposite_faces, tetrahedra, menelaus}); }

CrossRatioReport verify_cross_ratio_system(const CliffordConfiguration& cfg) {
  CrossRatioReport r;
  const int n = cfg.n;
  const Subset all = cfg.full();
  auto bit = [](int k) { return 1u << (k - 1); };
  auto record = [&](double& slot, auto&& lhs, auto&& rhs) {
    try {
      slot = std::max(slot, relative_distance(lhs(), rhs()));
      ++r.checked;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::IndeterminateRatio) throw;
      ++r.skipped;
    }
  };
  for (Subset i = 0; i <= all; ++i) {
    for (int a = 1; a <= n; ++a) {
      for (int b = 1; b <= n; ++b) {
        if (a == b) continue;
        auto face = [&](Subset s) {
          return [&, s] {
            return cross_ratio(cfg.label(s), cfg.label(s ^ bit(a)), cfg.label(s ^ bit(a) ^ bit(b)), cfg.label(s ^ bit(b)));
          };
        };
        for (int k = 1; k <= n; ++k) {
          if (k == a || k == b) continue;
          record(r.opposite_faces, face(i), face(i ^ bit(k)));
        }
      }
    }
  }
  if (n == 4) {
    for (Subset i = 0; i <= all; ++i) {
      for (int a = 1; a <= 4; ++a) {
        for (int b = 1; b <= 4; ++b) {
          for (int c = 1; c <= 4; ++c) {
            if (a == b || b == c || a == c) continue;
            auto tet = [&](Subset s) {
              return [&, s] {
                return cross_ratio(cfg.label(s), cfg.label(s ^ bit(a) ^ bit(b)), cfg.label(s ^ bit(b) ^ bit(c)),
                                   cfg.label(s ^ bit(a) ^ bit(c)));
              };
            };
            for (int k = 1; k <= 4; ++k) record(r.tetrahedra, tet(i), tet(i ^ bit(k)));
          }
        }
      }
    }
    // Send V13 to infinity; both hexagons of the octahedron have multi-ratio -1.
    const ExtendedComplex v13 = cfg.points.at(subset({1, 3}));
    const MobiusMap t = v13.is_finite() ? MobiusMap(0.0, 1.0, 1.0, -v13.value()) : MobiusMap::identity();
    auto tv = [&](std::initializer_list<int> s) { return t(cfg.points.at(subset(s))); };
    try {
      const auto m1 = multi_ratio(tv({3, 4}), tv({1, 4}), tv({1, 2, 3, 4}), tv({1, 2}), tv({2, 3}), tv({}));
      const auto m2 = multi_ratio(tv({1, 4}), tv({3, 4}), tv({1, 2, 3, 4}), tv({2, 3}), tv({1, 2}), tv({}));
      r.menelaus = std::max(point_gap(m1, ExtendedComplex(-1.0), 1.0), point_gap(m2, ExtendedComplex(-1.0), 1.0));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::IndeterminateRatio) throw;
      ++r.skipped;
    }
  }
  return r;
}

PencilSample random_pencil(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> radius(0.5, 2.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::acos(-1.0));
  PencilSample out;
  const Complex base(normal(rng), normal(rng));
  out.base = ExtendedComplex(base);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Complex> dirs;
    for (int k = 0; k < count; ++k) dirs.push_back(std::polar(radius(rng), angle(rng)));
    bool ok = true;
    for (int i = 0; i < count && ok; ++i) {
      for (int j = i + 1; j < count && ok; ++j) {
        const double c = dirs[i].real() * dirs[j].imag() - dirs[i].imag() * dirs[j].real();
        if (std::abs(c) < 0.1 * std::abs(dirs[i]) * std::abs(dirs[j])) ok = false;
      }
    }
    if (!ok) continue;
    for (const auto& d : dirs) out.circles.push_back(Circle::make_circle(base + d, std::abs(d)));
    return out;
  }
  throw Error(ErrorCode::ConstructionFailure, "could not sample a generic pencil");
}

}  // namespace miquel
