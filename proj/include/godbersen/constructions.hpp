#pragma once

// Auxiliary bodies built from a base body K (and L):
//
//   C(K, t)      = conv({0} x (1-t)K  U  {1} x (-tK))            in R^(n+1)
//   T(K1, K2)    = conv({(0,0,y) : y in K2}  U  {(1,x,-x) : x in K1}) in R^(2n+1)
//   C2n(K, L)    = conv(K x {0}  U  {0} x L)                      in R^(2n)
//   D_t K        = (1-t)K + t(-K)
//
// together with their sections and shadows. Sections and projections are
// returned in intrinsic orthonormal coordinates of the subspace, so volume
// factors coming from the embedding are visible to the caller.

#include <cmath>
#include <string>
#include <vector>

#include "godbersen/combinatorics.hpp"
#include "godbersen/error.hpp"
#include "godbersen/polytope.hpp"

namespace godbersen {

struct LiftedBodyC {
  int base_dim = 0;
  double lambda = 0.0;
  VPolytope body;  // first coordinate is the lift parameter
};

struct LiftedBodyT {
  int base_dim = 0;
  VPolytope body;  // coordinates (theta, x, y)
  VPolytope k1;
  VPolytope k2;
};

inline void require_unit_interval(double t, const char* what) {
  if (!(t >= 0.0 && t <= 1.0)) fail(ErrorKind::BadInput, std::string(what) + " outside [0,1]");
}

inline LiftedBodyC build_C(const VPolytope& k, double lambda) {
  require_unit_interval(lambda, "lambda");
  const int n = k.dim();
  const int m = k.num_vertices();
  Matrix pts(n + 1, 2 * m);
  for (int i = 0; i < m; ++i) {
    pts(0, i) = 0.0;
    pts.col(i).tail(n) = (1.0 - lambda) * k.vertices().col(i);
    pts(0, m + i) = 1.0;
    pts.col(m + i).tail(n) = -lambda * k.vertices().col(i);
  }
  return {n, lambda, VPolytope::hull_of(pts)};
}

inline LiftedBodyT build_T(const VPolytope& k1, const VPolytope& k2) {
  if (k1.dim() != k2.dim()) fail(ErrorKind::DimensionMismatch, "T needs two bodies of equal dimension");
  const int n = k1.dim();
  if (n > 3) fail(ErrorKind::BadInput, "T bodies are limited to n <= 3");
  const int m1 = k1.num_vertices();
  const int m2 = k2.num_vertices();
  Matrix pts = Matrix::Zero(2 * n + 1, m1 + m2);
  for (int i = 0; i < m2; ++i) pts.col(i).tail(n) = k2.vertices().col(i);
  for (int i = 0; i < m1; ++i) {
    pts(0, m2 + i) = 1.0;
    pts.col(m2 + i).segment(1, n) = k1.vertices().col(i);
    pts.col(m2 + i).tail(n) = -k1.vertices().col(i);
  }
  return {n, VPolytope::hull_of(pts), k1, k2};
}

/// n!n!/(2n+1)! vol(K1) vol(K2).
inline double T_volume_closed_form(const VPolytope& k1, const VPolytope& k2) {
  const int n = k1.dim();
  return factorial(n) * factorial(n) / factorial(2 * n + 1) * k1.volume() * k2.volume();
}

/// The plane {(theta0, x, 0)}.
inline AffineSubspace T_section_plane(int n, double theta0) {
  Vector p = Vector::Zero(2 * n + 1);
  p(0) = theta0;
  Matrix basis = Matrix::Zero(2 * n + 1, n);
  basis.block(1, 0, n, n) = Matrix::Identity(n, n);
  return AffineSubspace(p, basis);
}

/// The complement {(theta, 0, y)}, basis ordered (theta, y).
inline AffineSubspace T_projection_space(int n) {
  Matrix basis = Matrix::Zero(2 * n + 1, n + 1);
  basis(0, 0) = 1.0;
  basis.block(n + 1, 1, n, n) = Matrix::Identity(n, n);
  return AffineSubspace(Vector::Zero(2 * n + 1), basis);
}

/// T ∩ {(theta0, x, 0)} in x-coordinates; equals theta0 K1 ∩ (1-theta0) K2.
inline VPolytope section_T(const LiftedBodyT& t, double theta0) {
  if (!(theta0 > 0.0 && theta0 < 1.0)) fail(ErrorKind::BadInput, "theta0 must lie in (0,1)");
  return section(t.body, T_section_plane(t.base_dim, theta0));
}

/// Shadow of T on {(theta, 0, y)} in (theta, y)-coordinates.
inline VPolytope project_T(const LiftedBodyT& t) { return project(t.body, T_projection_space(t.base_dim)); }

inline VPolytope build_diag_C(const VPolytope& k, const VPolytope& l) {
  if (k.dim() != l.dim()) fail(ErrorKind::DimensionMismatch, "diagonal body needs equal dimensions");
  const int n = k.dim();
  if (n > 3) fail(ErrorKind::BadInput, "diagonal bodies are limited to n <= 3");
  Matrix pts = Matrix::Zero(2 * n, k.num_vertices() + l.num_vertices());
  pts.topLeftCorner(n, k.num_vertices()) = k.vertices();
  pts.bottomRightCorner(n, l.num_vertices()) = l.vertices();
  return VPolytope::hull_of(pts);
}

/// Orthonormal basis of E_t = {(t x, (1-t) x)}.
inline AffineSubspace diagonal_subspace(int n, double t) {
  const double s = std::sqrt(t * t + (1 - t) * (1 - t));
  Matrix b(2 * n, n);
  b << (t / s) * Matrix::Identity(n, n), ((1 - t) / s) * Matrix::Identity(n, n);
  return AffineSubspace(Vector::Zero(2 * n), b);
}

/// Orthonormal basis of E_t^perp = {((1-t) y, -t y)}.
inline AffineSubspace diagonal_complement(int n, double t) {
  const double s = std::sqrt(t * t + (1 - t) * (1 - t));
  Matrix b(2 * n, n);
  b << ((1 - t) / s) * Matrix::Identity(n, n), (-t / s) * Matrix::Identity(n, n);
  return AffineSubspace(Vector::Zero(2 * n), b);
}

/// Factor between intrinsic coordinates u on E_t and the parameter x with
/// point (t x, (1-t) x): u = factor * x.
inline double diagonal_parameter_scale(double t) { return std::sqrt(t * t + (1 - t) * (1 - t)); }

inline VPolytope diag_section(const VPolytope& c2n, double t) {
  if (!(t > 0.0 && t < 1.0)) fail(ErrorKind::BadInput, "diagonal parameter must lie in (0,1)");
  if (c2n.dim() % 2 != 0) fail(ErrorKind::DimensionMismatch, "diagonal body must live in even dimension");
  return section(c2n, diagonal_subspace(c2n.dim() / 2, t));
}

inline VPolytope diag_projection(const VPolytope& c2n, double t) {
  if (!(t > 0.0 && t < 1.0)) fail(ErrorKind::BadInput, "diagonal parameter must lie in (0,1)");
  if (c2n.dim() % 2 != 0) fail(ErrorKind::DimensionMismatch, "diagonal body must live in even dimension");
  return project(c2n, diagonal_complement(c2n.dim() / 2, t));
}

/// D_t K = (1-t)K + t(-K).
inline VPolytope unbalanced_difference_body(const VPolytope& k, double t) {
  require_unit_interval(t, "lambda");
  if (t == 0.0) return k;
  if (t == 1.0) return negate(k);
  return minkowski_sum(scale(k, 1.0 - t), scale(k, -t));
}

/// conv(K ∪ -L).
inline VPolytope conv_union(const VPolytope& k, const VPolytope& l) {
  if (k.dim() != l.dim()) fail(ErrorKind::DimensionMismatch, "union of different dimensions");
  Matrix pts(k.dim(), k.num_vertices() + l.num_vertices());
  pts << k.vertices(), -l.vertices();
  return VPolytope::hull_of(pts);
}

/// (K° + L°)° through the polar pipeline.
inline VPolytope polar_sum_body(const VPolytope& k, const VPolytope& l) {
  if (k.dim() != l.dim()) fail(ErrorKind::DimensionMismatch, "bodies of different dimension");
  const VPolytope kp = h_to_v(polar(k));
  const VPolytope lp = h_to_v(polar(l));
  return h_to_v(polar(minkowski_sum(kp, lp)));
}

/// Union over t of tK ∩ (1-t)L, accumulated over a uniform grid of
/// `grid` points (endpoints excluded, they contribute only the origin).
inline VPolytope union_of_intersections(const VPolytope& k, const VPolytope& l, int grid = 101) {
  require_origin_interior(k);
  require_origin_interior(l);
  std::vector<Vector> acc;
  for (int i = 1; i + 1 < grid; ++i) {
    const double t = static_cast<double>(i) / (grid - 1);
    const VPolytope piece = intersect(scale(k, t), scale(l, 1.0 - t));
    for (int v = 0; v < piece.num_vertices(); ++v) acc.push_back(piece.vertex(v));
  }
  return VPolytope::hull_of(acc);
}

/// conv((1-t)K ∪ -tK); the endpoint cases keep the origin as a point.
inline VPolytope remark_body(const VPolytope& k, double t) {
  require_unit_interval(t, "lambda");
  Matrix pts(k.dim(), 2 * k.num_vertices());
  pts << (1.0 - t) * k.vertices(), -t * k.vertices();
  return VPolytope::hull_of(pts);
}

}  // namespace godbersen
