#pragma once

// Full-dimensional convex polytopes in V- and H-representation, and the
// kernel operations on them: hulls, volumes, Minkowski sums, polarity,
// V/H conversion, intersections, sections and projections.
//
// Everything is double precision. Tolerances are the named constants of
// tolerances.hpp, scaled by the coordinate extent of the body involved.

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "godbersen/error.hpp"
#include "godbersen/linprog.hpp"
#include "godbersen/quickhull.hpp"
#include "godbersen/tolerances.hpp"

namespace godbersen {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Convex body given by its (irredundant) vertices. Immutable; copies share
/// the hull data.
class VPolytope {
 public:
  struct Data {
    Matrix vertices;  // d x m, columns are vertices
    hull::Hull hull;  // indices refer to columns of `vertices`
    double volume = 0.0;
    Vector centroid;
  };

  /// Hull of the columns of `points`. The only way to make a VPolytope.
  static VPolytope hull_of(const Matrix& points) {
    if (!points.allFinite()) fail(ErrorKind::BadInput, "non-finite coordinate in body");
    hull::Hull h = hull::quickhull(points);
    auto data = std::make_shared<Data>();
    data->vertices.resize(points.rows(), static_cast<Eigen::Index>(h.vertices.size()));
    std::vector<int> remap(points.cols(), -1);
    for (std::size_t k = 0; k < h.vertices.size(); ++k) {
      remap[h.vertices[k]] = static_cast<int>(k);
      data->vertices.col(static_cast<Eigen::Index>(k)) = points.col(h.vertices[k]);
    }
    for (hull::Facet& f : h.facets)
      for (int& v : f.verts) v = remap[v];
    for (hull::Face& f : h.faces) {
      std::vector<int> kept;
      for (int v : f.verts)
        if (remap[v] >= 0) kept.push_back(remap[v]);
      f.verts = std::move(kept);
    }
    for (int& v : h.vertices) v = remap[v];
    hull::Mass mass = hull::hull_mass(data->vertices, h);
    data->hull = std::move(h);
    data->volume = mass.volume;
    data->centroid = mass.centroid;
    return VPolytope(std::move(data));
  }

  static VPolytope hull_of(const std::vector<Vector>& points) {
    if (points.empty()) fail(ErrorKind::DegenerateInput, "empty point set");
    Matrix m(points.front().size(), static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i].size() != m.rows()) fail(ErrorKind::DimensionMismatch, "points of mixed dimension");
      m.col(static_cast<Eigen::Index>(i)) = points[i];
    }
    return hull_of(m);
  }

  int dim() const { return static_cast<int>(data_->vertices.rows()); }
  int num_vertices() const { return static_cast<int>(data_->vertices.cols()); }
  const Matrix& vertices() const { return data_->vertices; }
  Vector vertex(int i) const { return data_->vertices.col(i); }
  double volume() const { return data_->volume; }
  const Vector& centroid() const { return data_->centroid; }
  const hull::Hull& hull() const { return data_->hull; }
  double scale() const { return data_->hull.scale; }

 private:
  explicit VPolytope(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

struct Halfspace {
  Vector normal;  // unit length
  double offset;  // normal . x <= offset
};

/// Bounded intersection of halfspaces with a strictly interior witness.
class HPolytope {
 public:
  /// Validates the witness and boundedness (support function at +-e_k).
  HPolytope(int dim, std::vector<Halfspace> halfspaces, Vector witness)
      : HPolytope(dim, std::move(halfspaces), std::move(witness), Trusted{}) {
    for (int k = 0; k < dim_; ++k) {
      for (double sgn : {1.0, -1.0}) {
        Vector e = Vector::Zero(dim_);
        e(k) = sgn;
        const lp::Result r = lp::maximize_free(normals(), offsets(), e);
        if (r.status == lp::Status::Unbounded) fail(ErrorKind::Unbounded, "halfspace system is unbounded");
      }
    }
  }

  struct Trusted {};
  /// For callers that know the system is bounded (facets of a V-polytope).
  HPolytope(int dim, std::vector<Halfspace> halfspaces, Vector witness, Trusted)
      : dim_(dim), halfspaces_(std::move(halfspaces)), witness_(std::move(witness)) {
    if (witness_.size() != dim_) fail(ErrorKind::DimensionMismatch, "witness dimension");
    if (halfspaces_.empty()) fail(ErrorKind::Unbounded, "no halfspaces");
    for (Halfspace& h : halfspaces_) {
      if (h.normal.size() != dim_) fail(ErrorKind::DimensionMismatch, "halfspace dimension");
      if (!h.normal.allFinite() || !std::isfinite(h.offset)) fail(ErrorKind::BadInput, "non-finite halfspace");
      const double nrm = h.normal.norm();
      if (nrm == 0.0) fail(ErrorKind::BadInput, "zero normal");
      h.normal /= nrm;
      h.offset /= nrm;
      if (h.normal.dot(witness_) > h.offset - eps_strict)
        fail(ErrorKind::BadInput, "interior witness violates a halfspace");
    }
  }

  int dim() const { return dim_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  const Vector& witness() const { return witness_; }

  Matrix normals() const {
    Matrix a(static_cast<Eigen::Index>(halfspaces_.size()), dim_);
    for (std::size_t i = 0; i < halfspaces_.size(); ++i) a.row(static_cast<Eigen::Index>(i)) = halfspaces_[i].normal.transpose();
    return a;
  }
  Vector offsets() const {
    Vector b(static_cast<Eigen::Index>(halfspaces_.size()));
    for (std::size_t i = 0; i < halfspaces_.size(); ++i) b(static_cast<Eigen::Index>(i)) = halfspaces_[i].offset;
    return b;
  }

  bool contains(const Vector& x, double tol = eps_geom) const {
    for (const Halfspace& h : halfspaces_)
      if (h.normal.dot(x) > h.offset + tol) return false;
    return true;
  }

 private:
  int dim_;
  std::vector<Halfspace> halfspaces_;
  Vector witness_;
};

/// Affine subspace p + span(basis) with orthonormal basis columns.
class AffineSubspace {
 public:
  AffineSubspace(Vector point, Matrix basis) : point_(std::move(point)), basis_(std::move(basis)) {
    if (basis_.rows() != point_.size()) fail(ErrorKind::DimensionMismatch, "subspace basis dimension");
    if (basis_.cols() < 1) fail(ErrorKind::BadInput, "subspace needs at least one direction");
    const Matrix gram = basis_.transpose() * basis_;
    if ((gram - Matrix::Identity(basis_.cols(), basis_.cols())).cwiseAbs().maxCoeff() > eps_geom)
      fail(ErrorKind::BadInput, "subspace basis is not orthonormal");
  }

  /// Orthonormalizes arbitrary independent directions (columns).
  static AffineSubspace spanned_by(Vector point, const Matrix& directions) {
    Eigen::HouseholderQR<Matrix> qr(directions);
    Matrix q = qr.householderQ() * Matrix::Identity(directions.rows(), directions.cols());
    const Matrix r = qr.matrixQR().topRows(directions.cols()).triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < directions.cols(); ++k) {
      if (std::abs(r(k, k)) <= eps_rank) fail(ErrorKind::BadInput, "dependent subspace directions");
      if (r(k, k) < 0) q.col(k) = -q.col(k);
    }
    return AffineSubspace(std::move(point), std::move(q));
  }

  /// Linear subspace through the origin.
  static AffineSubspace linear(const Matrix& directions) {
    return spanned_by(Vector::Zero(directions.rows()), directions);
  }

  int ambient_dim() const { return static_cast<int>(point_.size()); }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Vector& point() const { return point_; }
  const Matrix& basis() const { return basis_; }

  /// Orthonormal basis of the orthogonal complement (through the origin).
  AffineSubspace complement() const {
    Eigen::HouseholderQR<Matrix> qr(basis_);
    Matrix q = qr.householderQ();
    return AffineSubspace(Vector::Zero(ambient_dim()), q.rightCols(ambient_dim() - dim()));
  }

 private:
  Vector point_;
  Matrix basis_;
};

// ---------------------------------------------------------------------------
// Construction and vertexwise maps

inline VPolytope convex_hull(const std::vector<Vector>& points) { return VPolytope::hull_of(points); }
inline VPolytope convex_hull(const Matrix& points) { return VPolytope::hull_of(points); }

inline double volume(const VPolytope& k) { return k.volume(); }

inline VPolytope scale(const VPolytope& k, double s) {
  if (s == 0.0) fail(ErrorKind::ZeroScale, "scaling by zero collapses the body");
  return VPolytope::hull_of(Matrix(k.vertices() * s));
}

inline VPolytope negate(const VPolytope& k) { return scale(k, -1.0); }

inline VPolytope translate(const VPolytope& k, const Vector& t) {
  if (t.size() != k.dim()) fail(ErrorKind::DimensionMismatch, "translation dimension");
  return VPolytope::hull_of(Matrix(k.vertices().colwise() + t));
}

/// x -> A x + t for invertible A.
inline VPolytope affine_image(const VPolytope& k, const Matrix& a, const Vector& t) {
  if (a.rows() != k.dim() || a.cols() != k.dim() || t.size() != k.dim())
    fail(ErrorKind::DimensionMismatch, "affine map dimension");
  return VPolytope::hull_of(Matrix((a * k.vertices()).colwise() + t));
}

/// Sum of all vertex pairs, hulled.
inline VPolytope minkowski_sum(const VPolytope& a, const VPolytope& b) {
  if (a.dim() != b.dim()) fail(ErrorKind::DimensionMismatch, "Minkowski sum of different dimensions");
  const Matrix& va = a.vertices();
  const Matrix& vb = b.vertices();
  Matrix sums(a.dim(), va.cols() * vb.cols());
  for (Eigen::Index i = 0; i < va.cols(); ++i)
    for (Eigen::Index j = 0; j < vb.cols(); ++j) sums.col(i * vb.cols() + j) = va.col(i) + vb.col(j);
  return VPolytope::hull_of(sums);
}

/// Hull of the vertices of both bodies.
inline VPolytope hull_union(const VPolytope& a, const VPolytope& b) {
  if (a.dim() != b.dim()) fail(ErrorKind::DimensionMismatch, "union of different dimensions");
  Matrix pts(a.dim(), a.num_vertices() + b.num_vertices());
  pts << a.vertices(), b.vertices();
  return VPolytope::hull_of(pts);
}

// ---------------------------------------------------------------------------
// V <-> H and polarity

/// Facets of K as halfspaces, witness at the vertex centroid.
inline HPolytope v_to_h(const VPolytope& k) {
  std::vector<Halfspace> hs;
  hs.reserve(k.hull().faces.size());
  for (const hull::Face& f : k.hull().faces) hs.push_back({f.normal, f.offset});
  const Vector w = k.vertices().rowwise().mean();
  return HPolytope(k.dim(), std::move(hs), w, HPolytope::Trusted{});
}

inline bool contains(const VPolytope& k, const Vector& x, double tol = eps_geom) {
  const double t = tol * std::max(1.0, k.scale());
  for (const hull::Face& f : k.hull().faces)
    if (f.normal.dot(x) > f.offset + t) return false;
  return true;
}

/// Smallest distance from `x` to a facet plane (negative if outside).
inline double depth(const VPolytope& k, const Vector& x) {
  double best = std::numeric_limits<double>::infinity();
  for (const hull::Face& f : k.hull().faces) best = std::min(best, f.offset - f.normal.dot(x));
  return best;
}

inline void require_origin_interior(const VPolytope& k) {
  if (depth(k, Vector::Zero(k.dim())) <= eps_strict * std::max(1.0, k.scale()))
    fail(ErrorKind::OriginNotInterior, "origin is not strictly inside the body");
}

/// K° = { y : <v, y> <= 1 for every vertex v }.
inline HPolytope polar(const VPolytope& k) {
  require_origin_interior(k);
  std::vector<Halfspace> hs;
  hs.reserve(static_cast<std::size_t>(k.num_vertices()));
  for (int i = 0; i < k.num_vertices(); ++i) hs.push_back({k.vertex(i), 1.0});
  return HPolytope(k.dim(), std::move(hs), Vector::Zero(k.dim()), HPolytope::Trusted{});
}

/// Polar of an H-polytope containing the origin: conv{ a_i / b_i }.
inline VPolytope polar_h(const HPolytope& h) {
  Matrix pts(h.dim(), static_cast<Eigen::Index>(h.halfspaces().size()));
  for (std::size_t i = 0; i < h.halfspaces().size(); ++i) {
    const Halfspace& s = h.halfspaces()[i];
    if (s.offset <= eps_strict) fail(ErrorKind::OriginNotInterior, "origin is not strictly inside the halfspace system");
    pts.col(static_cast<Eigen::Index>(i)) = s.normal / s.offset;
  }
  try {
    return VPolytope::hull_of(pts);
  } catch (const GeometryError& e) {
    if (e.kind() == ErrorKind::DegenerateInput) fail(ErrorKind::Unbounded, "halfspace normals do not positively span");
    throw;
  }
}

/// Vertex enumeration by dualizing around the witness.
inline VPolytope h_to_v(const HPolytope& h) {
  const Vector& w = h.witness();
  std::vector<Halfspace> shifted;
  shifted.reserve(h.halfspaces().size());
  for (const Halfspace& s : h.halfspaces()) shifted.push_back({s.normal, s.offset - s.normal.dot(w)});
  const HPolytope centered(h.dim(), std::move(shifted), Vector::Zero(h.dim()), HPolytope::Trusted{});
  const VPolytope dual = polar_h(centered);
  const double tiny = eps_geom * std::max(1.0, dual.scale());
  Matrix pts(h.dim(), static_cast<Eigen::Index>(dual.hull().faces.size()));
  for (std::size_t i = 0; i < dual.hull().faces.size(); ++i) {
    const hull::Face& f = dual.hull().faces[i];
    if (f.offset <= tiny) fail(ErrorKind::Unbounded, "halfspace system is unbounded");
    pts.col(static_cast<Eigen::Index>(i)) = w + f.normal / f.offset;
  }
  return VPolytope::hull_of(pts);
}

/// The irredundant halfspaces, judged from a strictly interior
/// point: a constraint matters iff its dual point is a vertex of the dual hull.
inline std::vector<Halfspace> prune_redundant(int dim, const std::vector<Halfspace>& hs, const Vector& w) {
  Matrix pts(dim, static_cast<Eigen::Index>(hs.size()));
  for (std::size_t i = 0; i < hs.size(); ++i)
    pts.col(static_cast<Eigen::Index>(i)) = hs[i].normal / (hs[i].offset - hs[i].normal.dot(w));
  hull::Hull dual;
  try {
    dual = hull::quickhull(pts);
  } catch (const GeometryError& e) {
    if (e.kind() == ErrorKind::DegenerateInput) fail(ErrorKind::Unbounded, "halfspace system is unbounded");
    throw;
  }
  std::vector<Halfspace> out;
  for (int v : dual.vertices) out.push_back(hs[static_cast<std::size_t>(v)]);
  return out;
}

/// Max-slack witness for a halfspace system; throws `empty_kind` if the
/// system has no interior.
inline HPolytope with_fresh_witness(int dim, std::vector<Halfspace> hs, ErrorKind empty_kind) {
  Matrix g(static_cast<Eigen::Index>(hs.size()), dim);
  Vector b(static_cast<Eigen::Index>(hs.size()));
  double cap = 1.0;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const double nrm = hs[i].normal.norm();
    hs[i].normal /= nrm;
    hs[i].offset /= nrm;
    g.row(static_cast<Eigen::Index>(i)) = hs[i].normal.transpose();
    b(static_cast<Eigen::Index>(i)) = hs[i].offset;
    cap += std::abs(hs[i].offset);
  }
  const lp::MaxSlack ms = lp::max_slack(g, b, cap);
  if (ms.slack <= eps_strict * std::max(1.0, b.cwiseAbs().maxCoeff()))
    fail(empty_kind, "halfspace system has empty interior");
  std::vector<Halfspace> kept = prune_redundant(dim, hs, ms.point);
  return HPolytope(dim, std::move(kept), ms.point, HPolytope::Trusted{});
}

/// Intersection with redundant constraints removed and a max-slack witness.
inline HPolytope intersect(const HPolytope& a, const HPolytope& b) {
  if (a.dim() != b.dim()) fail(ErrorKind::DimensionMismatch, "intersection of different dimensions");
  std::vector<Halfspace> hs = a.halfspaces();
  hs.insert(hs.end(), b.halfspaces().begin(), b.halfspaces().end());
  return with_fresh_witness(a.dim(), std::move(hs), ErrorKind::EmptyIntersection);
}

inline VPolytope intersect(const VPolytope& a, const VPolytope& b) { return h_to_v(intersect(v_to_h(a), v_to_h(b))); }

// ---------------------------------------------------------------------------
// Sections and projections, both in the intrinsic coordinates of E

/// K ∩ E expressed in coordinates u with x = p + B u.
inline VPolytope section(const VPolytope& k, const AffineSubspace& e) {
  if (e.ambient_dim() != k.dim()) fail(ErrorKind::DimensionMismatch, "section subspace dimension");
  const double tol = eps_geom * std::max(1.0, k.scale());
  std::vector<Halfspace> hs;
  for (const hull::Face& f : k.hull().faces) {
    Vector g = e.basis().transpose() * f.normal;
    const double rhs = f.offset - f.normal.dot(e.point());
    if (g.norm() <= eps_geom) {
      if (rhs < -tol) fail(ErrorKind::EmptySection, "subspace misses the body");
      if (rhs <= tol) fail(ErrorKind::DegenerateSection, "subspace lies in a supporting hyperplane");
      continue;
    }
    hs.push_back({std::move(g), rhs});
  }
  if (hs.empty()) fail(ErrorKind::DegenerateSection, "section is unbounded");
  try {
    Matrix g(static_cast<Eigen::Index>(hs.size()), e.dim());
    Vector b(static_cast<Eigen::Index>(hs.size()));
    double cap = 1.0;
    for (std::size_t i = 0; i < hs.size(); ++i) {
      g.row(static_cast<Eigen::Index>(i)) = hs[i].normal.transpose();
      b(static_cast<Eigen::Index>(i)) = hs[i].offset;
      cap += std::abs(hs[i].offset);
    }
    const lp::MaxSlack ms = lp::max_slack(g, b, cap);
    const double strict = eps_strict * std::max(1.0, k.scale());
    if (ms.slack < -strict) fail(ErrorKind::EmptySection, "subspace misses the body");
    if (ms.slack <= strict) fail(ErrorKind::DegenerateSection, "section is lower-dimensional");
    std::vector<Halfspace> kept = prune_redundant(e.dim(), hs, ms.point);
    return h_to_v(HPolytope(e.dim(), std::move(kept), ms.point, HPolytope::Trusted{}));
  } catch (const GeometryError& err) {
    if (err.kind() == ErrorKind::Unbounded) fail(ErrorKind::DegenerateSection, "section is unbounded");
    throw;
  }
}

/// Orthogonal shadow of K on a linear subspace E, in E's basis coordinates.
inline VPolytope project(const VPolytope& k, const AffineSubspace& e) {
  if (e.ambient_dim() != k.dim()) fail(ErrorKind::DimensionMismatch, "projection subspace dimension");
  if (e.point().norm() > eps_geom) fail(ErrorKind::BadInput, "projection needs a linear subspace");
  return VPolytope::hull_of(Matrix(e.basis().transpose() * k.vertices()));
}

// ---------------------------------------------------------------------------
// Comparisons

/// True if every vertex of `a` is within `tol` of some vertex of `b` and
/// vice versa.
inline bool vertex_sets_match(const VPolytope& a, const VPolytope& b, double tol) {
  if (a.dim() != b.dim()) return false;
  auto covered = [tol](const Matrix& x, const Matrix& y) {
    for (Eigen::Index i = 0; i < x.cols(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < y.cols(); ++j) best = std::min(best, (x.col(i) - y.col(j)).cwiseAbs().maxCoeff());
      if (best > tol) return false;
    }
    return true;
  };
  return covered(a.vertices(), b.vertices()) && covered(b.vertices(), a.vertices());
}

}  // namespace godbersen
