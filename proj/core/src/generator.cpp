#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <random>

#include "miquel/error.hpp"
#include "miquel/lattice.hpp"

namespace miquel {

namespace {

constexpr int kNewtonIterations = 60;
constexpr double kConcyclicTarget = 1e-14;

bool acceptable(const CirclePattern& p, bool kasteleyn) {
  if (!validate_pattern(p).empty()) return false;
  return !kasteleyn || pattern_star_ratios(p.centers()).all_real_positive();
}

struct FaceCorners {
  std::array<int, 4> v;
  std::array<Complex, 4> shift;
};

// Vertex perturbation followed by a Gauss-Newton projection onto Im cro = 0 for
// every face. The minimum-norm step keeps the result close to the sample.
std::optional<CirclePattern> sample_torus(int rows, int cols, std::mt19937_64& rng, const GeneratorOptions& o) {
  const CirclePattern regular = make_regular_torus_pattern(rows, cols);
  const SurfaceGraph& g = regular.graph();
  const Periods per = regular.periods();
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  std::vector<VertexId> ids;
  std::map<VertexId, int> index;
  for (const auto& [id, v] : g.vertices()) {
    index.emplace(id, static_cast<int>(ids.size()));
    ids.push_back(id);
  }
  const int n = static_cast<int>(ids.size());
  Eigen::VectorXd x(2 * n);
  for (int k = 0; k < n; ++k) {
    const Complex z = regular.vertex_point(ids[k]).value();
    x[2 * k] = z.real() + 0.5 * o.spread * u(rng);
    x[2 * k + 1] = z.imag() + 0.5 * o.spread * u(rng);
  }

  std::vector<FaceCorners> faces;
  for (const auto& [fid, face] : g.faces()) {
    const auto cs = g.corners(fid);
    FaceCorners fc;
    for (int k = 0; k < 4; ++k) {
      fc.v[k] = index.at(cs[k].vertex);
      fc.shift[k] = per.lift(cs[k].offset);
    }
    faces.push_back(fc);
  }
  const int m = static_cast<int>(faces.size());

  bool converged = o.spread == 0.0;
  for (int it = 0; it < kNewtonIterations && !converged; ++it) {
    Eigen::VectorXd r(m);
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m, 2 * n);
    for (int f = 0; f < m; ++f) {
      const FaceCorners& fc = faces[f];
      std::array<Complex, 4> p;
      for (int k = 0; k < 4; ++k) p[k] = Complex(x[2 * fc.v[k]], x[2 * fc.v[k] + 1]) + fc.shift[k];
      const Complex a = p[0], b = p[1], c = p[2], d = p[3];
      const Complex cro = (a - b) * (c - d) / ((b - c) * (d - a));
      r[f] = cro.imag();
      // Logarithmic derivatives of the cross ratio in each corner.
      const std::array<Complex, 4> dlog{1.0 / (a - b) + 1.0 / (d - a), -1.0 / (a - b) - 1.0 / (b - c),
                                        1.0 / (c - d) + 1.0 / (b - c), -1.0 / (c - d) - 1.0 / (d - a)};
      for (int k = 0; k < 4; ++k) {
        const Complex gk = cro * dlog[k];
        jac(f, 2 * fc.v[k]) += gk.imag();
        jac(f, 2 * fc.v[k] + 1) += gk.real();
      }
    }
    if (r.cwiseAbs().maxCoeff() < kConcyclicTarget) {
      converged = true;
      break;
    }
    const Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-r);
    if (!step.allFinite()) return std::nullopt;
    x += step;
  }
  if (!converged) return std::nullopt;

  std::map<VertexId, ExtendedComplex> vertices;
  for (int k = 0; k < n; ++k) vertices.emplace(ids[k], ExtendedComplex(x[2 * k], x[2 * k + 1]));
  try {
    CirclePattern p = pattern_from_vertices(g, std::move(vertices), per);
    if (acceptable(p, o.kasteleyn)) return p;
  } catch (const Error&) {
  }
  return std::nullopt;
}

Complex reflect(Complex p, Complex a, Complex b) {
  const Complex dir = b - a;
  return a + dir * std::conj((p - a) / dir);
}

// Row by row: each face center sits on the perpendicular bisector of its bottom
// chord; the next row comes from second intersections of neighbouring circles,
// and the two end vertices are mirrored across the axis of the end face.
std::optional<CirclePattern> sample_patch(int rows, int cols, std::mt19937_64& rng, const GeneratorOptions& o) {
  const SurfaceGraph g = build_square_grid_patch(rows, cols);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto vid = [cols](int i, int j) { return VertexId{static_cast<std::uint32_t>(i * (cols + 1) + j)}; };
  auto fid = [cols](int i, int j) { return FaceId{static_cast<std::uint32_t>(i * cols + j)}; };

  std::vector<std::vector<Complex>> z(rows + 1, std::vector<Complex>(cols + 1));
  for (int j = 0; j <= cols; ++j) {
    z[0][j] = Complex(j + 0.5 + 0.25 * o.spread * u(rng), 0.5 + 0.25 * o.spread * u(rng));
  }
  std::map<FaceId, ExtendedComplex> centers;
  for (int i = 0; i < rows; ++i) {
    std::vector<Complex> row_centers(cols);
    for (int j = 0; j < cols; ++j) {
      const Complex p = z[i][j];
      const Complex q = z[i][j + 1];
      const double t = 1.0 + o.spread * u(rng);
      row_centers[j] = 0.5 * (p + q) + t * Complex(0.0, 1.0) * 0.5 * (q - p);
      centers.emplace(fid(i, j), ExtendedComplex(row_centers[j]));
    }
    for (int j = 1; j < cols; ++j) z[i + 1][j] = reflect(z[i][j], row_centers[j - 1], row_centers[j]);
    const auto axis_end = [&](int j) {
      const Complex chord = z[i][j + 1] - z[i][j];
      return std::pair{row_centers[j], row_centers[j] + Complex(0.0, 1.0) * chord};
    };
    if (cols == 1) {
      // A single column has no interior vertex; mirror the bottom chord through the center.
      z[i + 1][0] = 2.0 * row_centers[0] - z[i][1];
      z[i + 1][1] = 2.0 * row_centers[0] - z[i][0];
    } else {
      const auto [a0, b0] = axis_end(0);
      z[i + 1][0] = reflect(z[i + 1][1], a0, b0);
      const auto [a1, b1] = axis_end(cols - 1);
      z[i + 1][cols] = reflect(z[i + 1][cols - 1], a1, b1);
    }
  }
  std::map<VertexId, ExtendedComplex> vertices;
  for (int i = 0; i <= rows; ++i) {
    for (int j = 0; j <= cols; ++j) vertices.emplace(vid(i, j), ExtendedComplex(z[i][j]));
  }
  try {
    CirclePattern p(FaceDrawing(g, std::move(centers)), std::move(vertices));
    if (acceptable(p, o.kasteleyn)) return p;
  } catch (const Error&) {
  }
  return std::nullopt;
}

}  // namespace

CirclePattern generate_kasteleyn_cauchy_data(int rows, int cols, std::uint64_t seed, const GeneratorOptions& options) {
  if (!(options.spread >= 0.0) || options.spread >= 1.0) {
    throw Error(ErrorCode::InvalidInput, "spread must lie in [0, 1)");
  }
  if (options.surface == Surface::torus) {
    if (rows < 2 || cols < 2 || rows % 2 != 0 || cols % 2 != 0) {
      throw Error(ErrorCode::OddDimensions, "torus grids need even dimensions of at least 2");
    }
  } else if (options.surface == Surface::plane_patch) {
    if (rows < 1 || cols < 1) throw Error(ErrorCode::InvalidInput, "patch dimensions must be positive");
  } else {
    throw Error(ErrorCode::InvalidInput, "generator supports torus and plane-patch only");
  }
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < std::max(1, options.max_retries); ++attempt) {
    auto p = options.surface == Surface::torus ? sample_torus(rows, cols, rng, options)
                                               : sample_patch(rows, cols, rng, options);
    if (p) return *p;
  }
  throw Error(ErrorCode::DegenerateRow, "no admissible sample after " + std::to_string(options.max_retries) + " tries");
}

}  // namespace miquel
