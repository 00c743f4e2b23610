#pragma once

// Deterministic generators of test bodies.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "godbersen/error.hpp"
#include "godbersen/polytope.hpp"

namespace godbersen {

/// Seeded 64-bit generator with platform-independent output. The standard
/// distributions are implementation-defined, so the conversions are done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double gaussian() {
    if (spare_) {
      const double g = *spare_;
      spare_.reset();
      return g;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

  Vector gaussian_vector(int n) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = gaussian();
    return v;
  }

  Vector unit_vector(int n) {
    for (;;) {
      Vector v = gaussian_vector(n);
      const double nrm = v.norm();
      if (nrm > 1e-12) return v / nrm;
    }
  }

  /// Random orthogonal matrix (QR of a Gaussian matrix, sign-fixed).
  Matrix orthogonal(int n) {
    Matrix g(n, n);
    for (int j = 0; j < n; ++j) g.col(j) = gaussian_vector(n);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR();
    for (int k = 0; k < n; ++k)
      if (r(k, k) < 0) q.col(k) = -q.col(k);
    return q;
  }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

enum class Generator { Simplex, Cube, Cross, RandomSphere, RandomGaussHull, ReuleauxPoly };

inline const char* to_string(Generator g) {
  switch (g) {
    case Generator::Simplex: return "SIMPLEX";
    case Generator::Cube: return "CUBE";
    case Generator::Cross: return "CROSS";
    case Generator::RandomSphere: return "RANDOM_SPHERE";
    case Generator::RandomGaussHull: return "RANDOM_GAUSS_HULL";
    case Generator::ReuleauxPoly: return "REULEAUX_POLY";
  }
  return "?";
}

inline Generator generator_from_string(const std::string& s) {
  for (Generator g : {Generator::Simplex, Generator::Cube, Generator::Cross, Generator::RandomSphere,
                      Generator::RandomGaussHull, Generator::ReuleauxPoly}) {
    std::string name = to_string(g);
    std::string lower;
    for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (s == name || s == lower) return g;
  }
  fail(ErrorKind::BadSpec, "unknown generator '" + s + "'");
}

struct AffineTransform {
  Matrix matrix;
  Vector translation;
};

struct BodySpec {
  Generator generator = Generator::Simplex;
  int dim = 2;
  int vertex_count = 0;  // random generators
  std::uint64_t seed = 0;
  int reuleaux_k = 3;  // odd number of arcs
  std::optional<AffineTransform> transform;

  std::string label() const {
    std::string s = to_string(generator);
    s += "(n=" + std::to_string(dim);
    if (generator == Generator::RandomSphere || generator == Generator::RandomGaussHull)
      s += ",m=" + std::to_string(vertex_count) + ",seed=" + std::to_string(seed);
    if (generator == Generator::ReuleauxPoly) s += ",k=" + std::to_string(reuleaux_k);
    if (transform) s += ",affine";
    s += ")";
    return s;
  }
};

namespace detail {

inline Matrix reuleaux_points(int k) {
  constexpr int per_arc = 8;
  Matrix pts(2, k * per_arc);
  auto corner = [k](int i) {
    const double a = 2.0 * std::numbers::pi * i / k;
    return Vector{{std::cos(a), std::sin(a)}};
  };
  const double width = (corner(0) - corner((k - 1) / 2)).norm();
  for (int j = 0; j < k; ++j) {
    // Arc from corner j to corner j+1, centred on the opposite corner.
    const Vector center = corner((j + (k + 1) / 2) % k);
    const Vector from = corner(j) - center;
    const Vector to = corner((j + 1) % k) - center;
    const double a0 = std::atan2(from(1), from(0));
    double a1 = std::atan2(to(1), to(0));
    while (a1 < a0) a1 += 2.0 * std::numbers::pi;
    for (int t = 0; t < per_arc; ++t) {
      const double a = a0 + (a1 - a0) * t / per_arc;
      pts.col(j * per_arc + t) = center + width * Vector{{std::cos(a), std::sin(a)}};
    }
  }
  return pts;
}

}  // namespace detail

inline VPolytope generate(const BodySpec& spec) {
  const int n = spec.dim;
  if (n < 1 || n > 8) fail(ErrorKind::BadSpec, "dimension must lie in 1..8");
  Matrix pts;
  switch (spec.generator) {
    case Generator::Simplex:
      pts = Matrix::Zero(n, n + 1);
      pts.rightCols(n) = Matrix::Identity(n, n);
      break;
    case Generator::Cube:
      pts.resize(n, 1 << n);
      for (int mask = 0; mask < (1 << n); ++mask)
        for (int i = 0; i < n; ++i) pts(i, mask) = (mask >> i) & 1;
      break;
    case Generator::Cross:
      pts.resize(n, 2 * n);
      pts << Matrix::Identity(n, n), -Matrix::Identity(n, n);
      break;
    case Generator::RandomSphere:
    case Generator::RandomGaussHull: {
      if (spec.vertex_count < n + 1) fail(ErrorKind::BadSpec, "random body needs at least n+1 points");
      Rng rng(spec.seed);
      pts.resize(n, spec.vertex_count);
      for (int i = 0; i < spec.vertex_count; ++i)
        pts.col(i) = spec.generator == Generator::RandomSphere ? rng.unit_vector(n) : rng.gaussian_vector(n);
      break;
    }
    case Generator::ReuleauxPoly:
      if (n != 2 || spec.reuleaux_k < 3 || spec.reuleaux_k % 2 == 0)
        fail(ErrorKind::BadSpec, "Reuleaux polygons need n = 2 and odd k >= 3");
      pts = detail::reuleaux_points(spec.reuleaux_k);
      break;
  }
  if (spec.transform) {
    const AffineTransform& t = *spec.transform;
    if (t.matrix.rows() != n || t.matrix.cols() != n || t.translation.size() != n)
      fail(ErrorKind::BadSpec, "transform dimension does not match body");
    if (std::abs(t.matrix.determinant()) <= eps_rank) fail(ErrorKind::BadSpec, "transform is singular");
    pts = (t.matrix * pts).colwise() + t.translation;
  }
  return VPolytope::hull_of(pts);
}

/// Center of mass from the facet-fan triangulation.
inline Vector centroid(const VPolytope& k) { return k.centroid(); }

enum class RecenterMode { Centroid, VertexMean };

inline VPolytope recenter(const VPolytope& k, RecenterMode mode = RecenterMode::Centroid) {
  const Vector c = mode == RecenterMode::Centroid ? k.centroid() : Vector(k.vertices().rowwise().mean());
  return translate(k, -c);
}

/// Random affine map with determinant bounded away from zero.
inline AffineTransform random_affine(int n, std::uint64_t seed) {
  Rng rng(seed);
  const Matrix q1 = rng.orthogonal(n);
  const Matrix q2 = rng.orthogonal(n);
  Vector s(n);
  for (int i = 0; i < n; ++i) s(i) = 0.5 + rng.uniform();
  return {q1 * s.asDiagonal() * q2, rng.gaussian_vector(n) * 0.3};
}

/// The standard test population for dimension n.
inline std::vector<BodySpec> default_zoo(int n, std::uint64_t seed = 1) {
  std::vector<BodySpec> zoo;
  zoo.push_back({Generator::Simplex, n});
  zoo.push_back({Generator::Cube, n});
  zoo.push_back({Generator::Cross, n});
  zoo.push_back({Generator::RandomSphere, n, n <= 3 ? 12 : 2 * n + 2, seed});
  zoo.push_back({Generator::RandomGaussHull, n, n <= 3 ? 16 : 2 * n + 4, seed + 1});
  BodySpec skew{Generator::Simplex, n};
  skew.transform = random_affine(n, seed + 2);
  zoo.push_back(skew);
  if (n == 2) {
    BodySpec r{Generator::ReuleauxPoly, 2};
    r.reuleaux_k = 5;
    zoo.push_back(r);
  }
  return zoo;
}

}  // namespace godbersen
