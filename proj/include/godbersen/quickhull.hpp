#pragma once

// Quickhull in arbitrary dimension with simplicial facets.
//
// Points are the columns of a d x N matrix. The result keeps indices into the
// input so callers can map hull vertices back to their own data. Coplanar
// simplicial facets are grouped into faces afterwards; faces carry the
// H-representation and decide which hull points are genuine vertices.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "godbersen/error.hpp"
#include "godbersen/tolerances.hpp"

namespace godbersen::hull {

struct Facet {
  std::vector<int> verts;      // d point indices
  std::vector<int> neighbors;  // neighbors[i] shares every vertex except verts[i]
  Eigen::VectorXd normal;      // unit, outward
  double offset = 0.0;         // normal . x <= offset on the hull
};

struct Face {
  Eigen::VectorXd normal;
  double offset = 0.0;
  std::vector<int> verts;  // sorted point indices lying on the face
};

struct Hull {
  int dim = 0;
  double scale = 0.0;          // coordinate extent used for tolerances
  Eigen::VectorXd interior;    // strictly interior reference point
  std::vector<int> vertices;   // sorted indices of genuine vertices
  std::vector<Facet> facets;   // simplicial boundary triangulation
  std::vector<Face> faces;     // merged coplanar facets
};

namespace detail {

inline double coordinate_scale(const Eigen::MatrixXd& pts) {
  if (pts.cols() == 0) return 0.0;
  const Eigen::VectorXd lo = pts.rowwise().minCoeff();
  const Eigen::VectorXd hi = pts.rowwise().maxCoeff();
  return std::max((hi - lo).maxCoeff(), std::max(lo.cwiseAbs().maxCoeff(), hi.cwiseAbs().maxCoeff()));
}

/// Indices of points that survive merging of near duplicates (first wins).
inline std::vector<int> unique_points(const Eigen::MatrixXd& pts, double tol) {
  const int n = static_cast<int>(pts.cols());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return pts(0, a) < pts(0, b); });
  std::vector<char> dropped(n, 0);
  for (int a = 0; a < n; ++a) {
    const int i = order[a];
    if (dropped[i]) continue;
    for (int b = a + 1; b < n && pts(0, order[b]) - pts(0, i) <= tol; ++b) {
      const int k = order[b];
      if (!dropped[k] && (pts.col(k) - pts.col(i)).cwiseAbs().maxCoeff() <= tol)
        dropped[std::max(i, k)] = 1;
    }
  }
  std::vector<int> keep;
  for (int i = 0; i < n; ++i)
    if (!dropped[i]) keep.push_back(i);
  return keep;
}

class Builder {
 public:
  Builder(const Eigen::MatrixXd& pts, const std::vector<int>& candidates, double scale)
      : pts_(pts), cand_(candidates), d_(static_cast<int>(pts.rows())), scale_(scale),
        eps_(eps_geom * scale) {}

  Hull run() {
    initial_simplex();
    assign_initial();
    for (int sweep = 0;; ++sweep) {
      expand();
      if (!recheck()) break;
      if (sweep > 8) fail(ErrorKind::NumericalFailure, "hull failed to converge");
    }
    return finish();
  }

 private:
  struct Work {
    Facet f;
    std::vector<int> outside;
    bool alive = true;
    int mark = 0;
  };

  double dist(const Work& w, int p) const { return w.f.normal.dot(pts_.col(p)) - w.f.offset; }

  void set_plane(Facet& f) const {
    const Eigen::VectorXd p0 = pts_.col(f.verts[0]);
    Eigen::VectorXd n;
    if (d_ == 1) {
      n = Eigen::VectorXd::Ones(1);
    } else {
      Eigen::MatrixXd m(d_, d_ - 1);
      for (int k = 1; k < d_; ++k) m.col(k - 1) = pts_.col(f.verts[k]) - p0;
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
      Eigen::MatrixXd q = qr.householderQ();
      n = q.col(d_ - 1);
    }
    if (n.dot(interior_ - p0) > 0) n = -n;
    f.normal = n;
    double off = 0.0;
    for (int v : f.verts) off += n.dot(pts_.col(v));
    f.offset = off / d_;
  }

  void initial_simplex() {
    if (static_cast<int>(cand_.size()) < d_ + 1) fail(ErrorKind::DegenerateInput, "fewer than d+1 candidate points");
    std::vector<int> chosen;
    int first = cand_[0];
    for (int i : cand_)
      if (pts_(0, i) < pts_(0, first)) first = i;
    chosen.push_back(first);
    const Eigen::VectorXd p0 = pts_.col(first);
    Eigen::MatrixXd basis(d_, 0);
    for (int k = 0; k < d_; ++k) {
      int best = -1;
      double best_norm = -1.0;
      Eigen::VectorXd best_res;
      for (int i : cand_) {
        Eigen::VectorXd r = pts_.col(i) - p0;
        for (int b = 0; b < basis.cols(); ++b) r -= basis.col(b).dot(r) * basis.col(b);
        for (int b = 0; b < basis.cols(); ++b) r -= basis.col(b).dot(r) * basis.col(b);
        const double nr = r.norm();
        if (nr > best_norm) {
          best_norm = nr;
          best = i;
          best_res = r;
        }
      }
      if (best < 0 || best_norm <= eps_rank * scale_)
        fail(ErrorKind::DegenerateInput, "points do not span the ambient space affinely");
      basis.conservativeResize(d_, basis.cols() + 1);
      basis.col(basis.cols() - 1) = best_res / best_norm;
      chosen.push_back(best);
    }
    interior_ = Eigen::VectorXd::Zero(d_);
    for (int v : chosen) interior_ += pts_.col(v);
    interior_ /= static_cast<double>(d_ + 1);

    for (int omit = 0; omit <= d_; ++omit) {
      Work w;
      for (int k = 0; k <= d_; ++k)
        if (k != omit) w.f.verts.push_back(chosen[k]);
      // Facet `omit` borders facet `j` across the ridge missing chosen[j].
      for (int k = 0; k <= d_; ++k)
        if (k != omit) w.f.neighbors.push_back(k);
      set_plane(w.f);
      work_.push_back(std::move(w));
    }
    in_simplex_ = chosen;
    is_vertex_.assign(pts_.cols(), 0);
    for (int v : chosen) is_vertex_[v] = 1;
  }

  void assign(const std::vector<int>& points, const std::vector<int>& targets) {
    for (int p : points) {
      if (is_vertex_[p]) continue;
      int best = -1;
      double best_d = eps_;
      for (int t : targets) {
        const double dd = dist(work_[t], p);
        if (dd > best_d) {
          best_d = dd;
          best = t;
        }
      }
      if (best >= 0) work_[best].outside.push_back(p);
    }
  }

  void assign_initial() {
    std::vector<int> rest;
    for (int i : cand_)
      if (std::find(in_simplex_.begin(), in_simplex_.end(), i) == in_simplex_.end())
        rest.push_back(i);
    std::vector<int> targets(work_.size());
    std::iota(targets.begin(), targets.end(), 0);
    assign(rest, targets);
  }

  void expand() {
    for (std::size_t cursor = 0; cursor < work_.size(); ++cursor) {
      while (work_[cursor].alive && !work_[cursor].outside.empty()) add_point(static_cast<int>(cursor));
    }
  }

  void add_point(int start) {
    const std::vector<int>& out = work_[start].outside;
    int apex = out[0];
    double far = dist(work_[start], apex);
    for (int p : out) {
      const double dd = dist(work_[start], p);
      if (dd > far) {
        far = dd;
        apex = p;
      }
    }

    is_vertex_[apex] = 1;
    ++generation_;
    std::vector<int> visible{start};
    work_[start].mark = generation_;
    for (std::size_t q = 0; q < visible.size(); ++q) {
      for (int g : work_[visible[q]].f.neighbors) {
        if (work_[g].mark == generation_) continue;
        if (dist(work_[g], apex) > eps_) {
          work_[g].mark = generation_;
          visible.push_back(g);
        }
      }
    }

    std::vector<int> created;
    std::map<std::vector<int>, std::pair<int, int>> open_ridges;
    for (int f : visible) {
      for (int i = 0; i < d_; ++i) {
        const int g = work_[f].f.neighbors[i];
        if (work_[g].mark == generation_) continue;
        Work nw;
        nw.f.verts = work_[f].f.verts;
        nw.f.verts[i] = apex;
        nw.f.neighbors.assign(d_, -1);
        nw.f.neighbors[i] = g;
        set_plane(nw.f);
        const int id = static_cast<int>(work_.size());
        auto& gn = work_[g].f.neighbors;
        *std::find(gn.begin(), gn.end(), f) = id;
        work_.push_back(std::move(nw));
        created.push_back(id);
        for (int k = 0; k < d_; ++k) {
          if (k == i) continue;
          std::vector<int> key;
          for (int t = 0; t < d_; ++t)
            if (t != k) key.push_back(work_[id].f.verts[t]);
          std::sort(key.begin(), key.end());
          auto it = open_ridges.find(key);
          if (it == open_ridges.end()) {
            open_ridges.emplace(std::move(key), std::make_pair(id, k));
          } else {
            work_[id].f.neighbors[k] = it->second.first;
            work_[it->second.first].f.neighbors[it->second.second] = id;
            open_ridges.erase(it);
          }
        }
      }
    }
    if (!open_ridges.empty()) fail(ErrorKind::NumericalFailure, "inconsistent horizon in hull update");

    std::vector<int> orphans;
    for (int f : visible) {
      work_[f].alive = false;
      for (int p : work_[f].outside)
        if (p != apex) orphans.push_back(p);
      work_[f].outside.clear();
      work_[f].outside.shrink_to_fit();
    }
    assign(orphans, created);
  }

  // Full scan for points still outside some facet. Returns true if work remains.
  bool recheck() {
    std::vector<int> alive;
    for (std::size_t i = 0; i < work_.size(); ++i)
      if (work_[i].alive) alive.push_back(static_cast<int>(i));
    bool found = false;
    for (int p : cand_) {
      // A point already on the hull can look outside a nearly flat facet.
      if (is_vertex_[p]) continue;
      int best = -1;
      double best_d = eps_;
      for (int f : alive) {
        const double dd = dist(work_[f], p);
        if (dd > best_d) {
          best_d = dd;
          best = f;
        }
      }
      if (best >= 0) {
        work_[best].outside.push_back(p);
        found = true;
      }
    }
    return found;
  }

  Hull finish() {
    Hull h;
    h.dim = d_;
    h.scale = scale_;
    h.interior = interior_;
    std::vector<int> remap(work_.size(), -1);
    for (std::size_t i = 0; i < work_.size(); ++i)
      if (work_[i].alive) {
        remap[i] = static_cast<int>(h.facets.size());
        h.facets.push_back(work_[i].f);
      }
    for (Facet& f : h.facets)
      for (int& g : f.neighbors) g = remap[g];

    // Group coplanar neighbours into faces.
    const int nf = static_cast<int>(h.facets.size());
    std::vector<int> parent(nf);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int f = 0; f < nf; ++f) {
      for (int i = 0; i < d_; ++i) {
        const int g = h.facets[f].neighbors[i];
        if (g < f) continue;
        const Facet& fg = h.facets[g];
        int opposite = -1;
        for (int v : fg.verts)
          if (std::find(h.facets[f].verts.begin(), h.facets[f].verts.end(), v) == h.facets[f].verts.end())
            opposite = v;
        if (opposite < 0) fail(ErrorKind::NumericalFailure, "duplicate facets in hull");
        const double a = std::abs(h.facets[f].normal.dot(pts_.col(opposite)) - h.facets[f].offset);
        const double b = std::abs(fg.normal.dot(pts_.col(h.facets[f].verts[i])) - fg.offset);
        if (a <= eps_ && b <= eps_) parent[find(f)] = find(g);
      }
    }
    std::map<int, int> face_of_root;
    std::vector<int> facet_face(nf);
    for (int f = 0; f < nf; ++f) {
      const int r = find(f);
      auto it = face_of_root.find(r);
      if (it == face_of_root.end()) {
        it = face_of_root.emplace(r, static_cast<int>(h.faces.size())).first;
        h.faces.push_back(Face{Eigen::VectorXd::Zero(d_), 0.0, {}});
      }
      facet_face[f] = it->second;
      Face& face = h.faces[it->second];
      face.normal += h.facets[f].normal;
      face.verts.insert(face.verts.end(), h.facets[f].verts.begin(), h.facets[f].verts.end());
    }
    for (Face& face : h.faces) {
      face.normal.normalize();
      std::sort(face.verts.begin(), face.verts.end());
      face.verts.erase(std::unique(face.verts.begin(), face.verts.end()), face.verts.end());
      face.offset = -std::numeric_limits<double>::infinity();
      for (int v : face.verts) face.offset = std::max(face.offset, face.normal.dot(pts_.col(v)));
    }

    // A hull point is a vertex only if its incident face normals span R^d.
    std::map<int, std::vector<int>> incident;
    for (int f = 0; f < nf; ++f)
      for (int v : h.facets[f].verts) incident[v].push_back(facet_face[f]);
    for (auto& [v, fl] : incident) {
      std::sort(fl.begin(), fl.end());
      fl.erase(std::unique(fl.begin(), fl.end()), fl.end());
      bool genuine = static_cast<int>(fl.size()) >= d_;
      if (genuine) {
        Eigen::MatrixXd nm(fl.size(), d_);
        for (std::size_t r = 0; r < fl.size(); ++r) nm.row(static_cast<Eigen::Index>(r)) = h.faces[fl[r]].normal.transpose();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(nm);
        // Faces that were not merged differ by an angle of order eps_geom, so
        // the cut-off sits an order of magnitude below that.
        genuine = svd.singularValues()(d_ - 1) > 0.1 * eps_geom;
      }
      if (genuine) h.vertices.push_back(v);
    }
    std::sort(h.vertices.begin(), h.vertices.end());
    return h;
  }

  const Eigen::MatrixXd& pts_;
  std::vector<int> cand_;
  int d_;
  double scale_;
  double eps_;
  Eigen::VectorXd interior_;
  std::vector<int> in_simplex_;
  std::vector<char> is_vertex_;
  std::vector<Work> work_;
  int generation_ = 0;
};

}  // namespace detail

/// Convex hull of the columns of `pts`. Throws DegenerateInput when the
/// points do not affinely span R^d.
inline Hull quickhull(const Eigen::MatrixXd& pts) {
  const int d = static_cast<int>(pts.rows());
  if (d < 1 || pts.cols() < d + 1)
    fail(ErrorKind::DegenerateInput, "need at least d+1 points for a full-dimensional hull");
  if (!pts.allFinite()) fail(ErrorKind::BadInput, "non-finite coordinate");
  const double scale = detail::coordinate_scale(pts);
  if (scale <= 0.0) fail(ErrorKind::DegenerateInput, "all points coincide");
  // Volumes scale like extent^d with d <= 8; this keeps them finite and normal.
  if (scale > 1e30 || scale < 1e-30) fail(ErrorKind::BadInput, "coordinate extent outside [1e-30, 1e30]");
  std::vector<int> cand = detail::unique_points(pts, eps_geom * scale);
  if (static_cast<int>(cand.size()) < d + 1)
    fail(ErrorKind::DegenerateInput, "fewer than d+1 distinct points");

  Hull h = detail::Builder(pts, cand, scale).run();
  // Points that sit inside a face without being corners are dropped and the
  // triangulation is rebuilt on the genuine vertices.
  for (int round = 0; round < 4; ++round) {
    std::vector<int> used;
    for (const Facet& f : h.facets) used.insert(used.end(), f.verts.begin(), f.verts.end());
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    if (used == h.vertices) return h;
    if (round == 3 || static_cast<int>(h.vertices.size()) < d + 1) {
      h.vertices = used;
      return h;
    }
    h = detail::Builder(pts, h.vertices, scale).run();
  }
  return h;
}

/// Signed-free volume and centroid of the hull from its facet fan.
struct Mass {
  double volume = 0.0;
  Eigen::VectorXd centroid;
  double worst_condition = 1.0;
};

inline Mass hull_mass(const Eigen::MatrixXd& pts, const Hull& h) {
  const int d = h.dim;
  double fact = 1.0;
  for (int k = 2; k <= d; ++k) fact *= k;
  Mass m;
  m.centroid = Eigen::VectorXd::Zero(d);
  std::vector<double> vols;
  std::vector<double> conds;
  vols.reserve(h.facets.size());
  Eigen::MatrixXd s(d, d);
  for (const Facet& f : h.facets) {
    for (int k = 0; k < d; ++k) s.col(k) = pts.col(f.verts[k]) - h.interior;
    const double v = std::abs(s.partialPivLu().determinant()) / fact;
    vols.push_back(v);
    m.volume += v;
    Eigen::VectorXd c = h.interior;
    for (int k = 0; k < d; ++k) c += pts.col(f.verts[k]);
    m.centroid += v * c / static_cast<double>(d + 1);
  }
  m.centroid /= m.volume;
  // Slivers of negligible volume are harmless; only substantial simplices
  // are held to the conditioning bound.
  for (std::size_t i = 0; i < h.facets.size(); ++i) {
    if (vols[i] <= eps_geom * m.volume) continue;
    const Facet& f = h.facets[i];
    for (int k = 0; k < d; ++k) s.col(k) = pts.col(f.verts[k]) - h.interior;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(s);
    const auto& sv = svd.singularValues();
    const double cond = sv(0) / sv(d - 1);
    m.worst_condition = std::max(m.worst_condition, cond);
    if (!(cond <= cond_max))
      fail(ErrorKind::NumericalFailure, "ill-conditioned simplex in volume triangulation");
  }
  return m;
}

}  // namespace godbersen::hull
