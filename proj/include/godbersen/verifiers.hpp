#pragma once

// Evaluation of the inequalities on concrete bodies. Every function returns
// reports oriented as lhs <= rhs; inequalities of the form A >= B are stored
// with lhs = B, rhs = A.

#include <cmath>
#include <string>
#include <vector>

#include "godbersen/body_zoo.hpp"
#include "godbersen/certificate.hpp"
#include "godbersen/combinatorics.hpp"
#include "godbersen/constructions.hpp"
#include "godbersen/mixed_volume.hpp"
#include "godbersen/report.hpp"
#include "godbersen/serialize.hpp"

namespace godbersen {

inline std::vector<double> uniform_grid(int points) {
  if (points < 2) fail(ErrorKind::BadInput, "lambda grid needs at least 2 points");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = static_cast<double>(i) / (points - 1);
  return g;
}

inline constexpr int default_grid_points = 21;

/// A body together with its profile, shared by all single-body verifiers.
struct Subject {
  std::string label;
  VPolytope body;
  MixedVolumeProfile profile;

  int dim() const { return body.dim(); }
  double vol() const { return profile.vol_K; }
  /// V_j / vol(K) with V_0 = V_n = 1 exactly.
  double v(int j) const { return j == 0 || j == profile.n ? 1.0 : profile.normalized(j); }
};

inline Subject make_subject(std::string label, const VPolytope& k) {
  return {std::move(label), k, mixed_volume_profile(k)};
}

namespace detail {

inline std::string vec_string(const Vector& v) {
  std::string s = "(";
  for (int i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_g17(v(i));
  return s + ")";
}

/// Translate so the centroid sits at the origin, recording the shift when it is not negligible.
inline VPolytope centered(const VPolytope& k, const std::string& name, std::string& note) {
  const Vector c = k.centroid();
  if (c.norm() <= eps_geom * k.scale()) return k;
  if (!note.empty()) note += "; ";
  note += name + " translated by " + vec_string(-c) + " to center of mass";
  return translate(k, -c);
}

/// Translate to the center of mass only if the origin is not already interior.
inline VPolytope origin_interior(const VPolytope& k, const std::string& name, std::string& note) {
  if (depth(k, Vector::Zero(k.dim())) > eps_strict * k.scale()) return k;
  return centered(k, name, note);
}

inline void mark_exploration(InequalityReport& r, const VPolytope& k, const std::string& label) {
  r.asserted = false;
  if (!r.passed) r.counterexample = body_to_json(k, label).dump();
}

}  // namespace detail

// ---------------------------------------------------------------------------

/// sum_j lambda^j (1-lambda)^(n-j) V_j <= vol K. `alt` holds the reformulated
/// sum over j = 1..n-1 of lambda^(j-1) (1-lambda)^(n-j-1) [V_j/vol - C(n,j)],
/// which equals (lhs - rhs) / (vol lambda (1-lambda)).
inline std::vector<InequalityReport> verify_theorem_sum(const Subject& s, const std::vector<double>& grid,
                                                        double tol_rel = tol_verify_rel) {
  const int n = s.dim();
  std::vector<InequalityReport> out;
  for (double l : grid) {
    require_unit_interval(l, "lambda");
    double lhs = 0.0, alt = 0.0;
    for (int j = 0; j <= n; ++j) lhs += std::pow(l, j) * std::pow(1 - l, n - j) * s.profile.values[static_cast<std::size_t>(j)];
    for (int j = 1; j < n; ++j) alt += std::pow(l, j - 1) * std::pow(1 - l, n - j - 1) * (s.v(j) - binomial(n, j));
    InequalityReport r = make_report(StatementId::THM1, s.label, n, lhs, s.vol(), tol_rel);
    r.lambda = l;
    r.alt = alt;
    out.push_back(std::move(r));
  }
  return out;
}

/// vol C(K, lambda) <= vol K / (n+1), with C built explicitly.
inline std::vector<InequalityReport> verify_lifted_bound(const Subject& s, const std::vector<double>& grid,
                                                   double tol_rel = tol_verify_rel) {
  const int n = s.dim();
  std::vector<InequalityReport> out;
  for (double l : grid) {
    const double c = build_C(s.body, l).body.volume();
    InequalityReport r = make_report(StatementId::LEM2, s.label, n, c, s.vol() / (n + 1), tol_rel);
    r.lambda = l;
    double identity = 0.0;
    for (int j = 0; j <= n; ++j) identity += std::pow(1 - l, n - j) * std::pow(l, j) * s.profile.values[static_cast<std::size_t>(j)];
    r.alt = identity / (n + 1);
    out.push_back(std::move(r));
  }
  return out;
}

/// (1/(n+1)) sum_j V_j / C(n,j) <= vol; `alt` is the (n-1)-term form.
inline InequalityReport verify_average_corollary(const Subject& s, double tol_rel = tol_verify_rel) {
  const int n = s.dim();
  if (n < 2) fail(ErrorKind::BadInput, "the averaged corollary needs n >= 2");
  double inner = 0.0;
  for (int j = 1; j < n; ++j) inner += s.v(j) / binomial(n, j);
  const double lhs = (2.0 + inner) / (n + 1) * s.vol();
  InequalityReport r = make_report(StatementId::COR3, s.label, n, lhs, s.vol(), tol_rel);
  r.alt = inner / (n - 1) * s.vol();
  return r;
}

/// At least k indices j in 1..n-1 satisfy V_j <= (n-1)/(n-k) C(n,j) vol.
/// lhs = k, rhs = number of such indices.
inline InequalityReport verify_markov_corollary(const Subject& s, int k, double tol_rel = tol_verify_rel) {
  const int n = s.dim();
  if (n < 2 || k < 1 || k > n - 1) fail(ErrorKind::BadInput, "k must lie in 1..n-1");
  const double threshold = static_cast<double>(n - 1) / (n - k);
  int count = 0;
  for (int j = 1; j < n; ++j) {
    const double bound = threshold * binomial(n, j);
    if (s.v(j) <= bound + tol_verify(bound, tol_rel)) ++count;
  }
  InequalityReport r = make_report(StatementId::COR4, s.label, n, k, count, 0.0);
  r.k = k;
  return r;
}

/// vol(K - K) <= C(2n,n) vol K, directly from the hull. `alt` is the profile
/// path sum_j C(n,j) V_j; disagreement beyond 1e-6 fails the report.
inline InequalityReport verify_rs_difference(const Subject& s, double tol_rel = tol_verify_rel) {
  const int n = s.dim();
  const double direct = minkowski_sum(s.body, negate(s.body)).volume();
  double via_profile = 0.0;
  for (int j = 0; j <= n; ++j) via_profile += binomial(n, j) * s.profile.values[static_cast<std::size_t>(j)];
  InequalityReport r = make_report(StatementId::RS_DIFF, s.label, n, direct, binomial(2 * n, n) * s.vol(), tol_rel);
  r.alt = via_profile;
  if (std::abs(direct - via_profile) > 1e-6 * direct) {
    r.passed = false;
    r.note = "direct and profile volumes of K-K disagree";
  }
  return r;
}

/// vol(P_{E^perp} T) vol(T cap E) <= C(m, j) vol T.
inline InequalityReport verify_secproj(const VPolytope& t, const AffineSubspace& e, const std::string& label,
                                       double tol_rel = tol_verify_rel) {
  if (e.ambient_dim() != t.dim()) fail(ErrorKind::DimensionMismatch, "subspace and body live in different spaces");
  const double sec = section(t, e).volume();
  const double proj = project(t, e.complement()).volume();
  InequalityReport r = make_report(StatementId::RS_SECPROJ, label, t.dim(), sec * proj,
                                   binomial(t.dim(), e.dim()) * t.volume(), tol_rel);
  r.j = e.dim();
  return r;
}

/// The consequence used for the lifted body: with T = T(K1, K2),
/// vol conv({0} x K2 U {1} x (-K1)) <= (1/(n+1)) vol K1 vol K2 / vol(theta0 K1 cap (1-theta0) K2).
inline InequalityReport verify_lifted_chain(const VPolytope& k1, const VPolytope& k2, double theta0,
                                            const std::string& label, double tol_rel = tol_verify_rel) {
  const LiftedBodyT t = build_T(k1, k2);
  const int n = t.base_dim;
  const double shadow = project_T(t).volume();
  const double sec = section_T(t, theta0).volume();
  InequalityReport r = make_report(StatementId::RS_SECPROJ, label, n, shadow,
                                   k1.volume() * k2.volume() / ((n + 1) * sec), tol_rel);
  r.lambda = theta0;
  r.note = "lifted-body chain";
  return r;
}

/// Section/projection bound on the bodies built in the proofs: T(lambda K,
/// (1-lambda)K) cut at theta0 = 1 - lambda, the resulting chain, and the
/// diagonal body C2n(K, K) against E_lambda. Needs n <= 3.
inline std::vector<InequalityReport> verify_secproj_constructions(const Subject& s, const std::vector<double>& grid,
                                                                  double tol_rel = tol_verify_rel) {
  const int n = s.dim();
  if (n > 3) fail(ErrorKind::BadInput, "lifted constructions are limited to n <= 3");
  std::string note;
  const VPolytope k0 = detail::origin_interior(s.body, "K", note);
  const VPolytope diag = build_diag_C(k0, k0);
  std::vector<InequalityReport> out;
  for (double l : grid) {
    if (l <= 0.0 || l >= 1.0) continue;
    const VPolytope k1 = scale(s.body, l), k2 = scale(s.body, 1 - l);
    const LiftedBodyT t = build_T(k1, k2);
    InequalityReport r = verify_secproj(t.body, T_section_plane(n, 1 - l), s.label, tol_rel);
    r.lambda = l;
    r.note = "lifted body T";
    out.push_back(std::move(r));
    out.push_back(verify_lifted_chain(k1, k2, 1 - l, s.label, tol_rel));
    out.back().lambda = l;

    InequalityReport d = verify_secproj(diag, diagonal_subspace(n, l), s.label, tol_rel);
    d.lambda = l;
    d.note = note.empty() ? "diagonal body" : "diagonal body; " + note;
    out.push_back(std::move(d));
  }
  return out;
}

/// sum_j C(n,j) lambda^j (1-lambda)^(n-j) V_j <= sum_j C(n,j)^2 lambda^j (1-lambda)^(n-j),
/// normalized V_j. Proven for n <= 5, explored beyond.
inline std::vector<InequalityReport> verify_unbalanced(const Subject& s, const std::vector<double>& grid,
                                                       double tol_rel = tol_verify_rel) {
  const int n = s.dim();
  std::vector<InequalityReport> out;
  for (double l : grid) {
    require_unit_interval(l, "lambda");
    double lhs = 0.0, rhs = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double w = bernstein(n, j, l);
      lhs += w * s.v(j);
      rhs += w * binomial(n, j);
    }
    InequalityReport r = make_report(StatementId::UNBALANCED, s.label, n, lhs, rhs, tol_rel);
    r.lambda = l;
    if (n >= 6) detail::mark_exploration(r, s.body, s.label);
    out.push_back(std::move(r));
  }
  return out;
}

/// V_j <= C(n,j) vol for j = 1..n-1. Only j = 1, n-1 are asserted.
inline std::vector<InequalityReport> verify_godbersen(const Subject& s, double tol_rel = tol_verify_rel) {
  const int n = s.dim();
  std::vector<InequalityReport> out;
  for (int j = 1; j < n; ++j) {
    InequalityReport r = make_report(StatementId::GODBERSEN_J, s.label, n, s.profile.values[static_cast<std::size_t>(j)],
                                     binomial(n, j) * s.vol(), tol_rel);
    r.j = j;
    if (j != 1 && j != n - 1) detail::mark_exploration(r, s.body, s.label);
    out.push_back(std::move(r));
  }
  return out;
}

/// V_j >= vol K for j = 1..n-1.
inline std::vector<InequalityReport> verify_alexandrov(const Subject& s, double tol_rel = tol_verify_rel) {
  const int n = s.dim();
  std::vector<InequalityReport> out;
  for (int j = 1; j < n; ++j) {
    InequalityReport r = make_report(StatementId::ALEXANDROV_J, s.label, n, s.vol(),
                                     s.profile.values[static_cast<std::size_t>(j)], tol_rel);
    r.j = j;
    out.push_back(std::move(r));
  }
  return out;
}

/// vol conv(K U -L) * vol (K° + L°)° <= vol K * vol L, origin interior to both.
inline InequalityReport verify_strange(const VPolytope& k, const VPolytope& l, const std::string& label,
                                       double tol_rel = tol_verify_rel) {
  if (k.dim() != l.dim()) fail(ErrorKind::DimensionMismatch, "pair of different dimensions");
  std::string note;
  const VPolytope k0 = detail::origin_interior(k, "K", note);
  const VPolytope l0 = detail::origin_interior(l, "L", note);
  const double lhs = conv_union(k0, l0).volume() * polar_sum_body(k0, l0).volume();
  InequalityReport r = make_report(StatementId::STRANGE, label, k.dim(), lhs, k.volume() * l.volume(), tol_rel);
  r.note = note;
  return r;
}

/// vol K * vol L <= vol(K cap -L) * vol(K + L) for bodies centered at their centroids.
inline InequalityReport verify_milman_pajor(const VPolytope& k, const VPolytope& l, const std::string& label,
                                            double tol_rel = tol_verify_rel) {
  if (k.dim() != l.dim()) fail(ErrorKind::DimensionMismatch, "pair of different dimensions");
  std::string note;
  const VPolytope k0 = detail::centered(k, "K", note);
  const VPolytope l0 = detail::centered(l, "L", note);
  const double rhs = intersect(k0, negate(l0)).volume() * minkowski_sum(k0, l0).volume();
  InequalityReport r = make_report(StatementId::MILMAN_PAJOR, label, k.dim(), k.volume() * l.volume(), rhs, tol_rel);
  r.note = note;
  return r;
}

/// vol conv((1-lambda)K U -lambda K) <= vol K with 0 in K.
inline std::vector<InequalityReport> verify_remark_EL(const Subject& s, const std::vector<double>& grid,
                                                      double tol_rel = tol_verify_rel) {
  std::string note;
  const VPolytope k = contains(s.body, Vector::Zero(s.dim())) ? s.body : detail::centered(s.body, "K", note);
  std::vector<InequalityReport> out;
  for (double l : grid) {
    InequalityReport r = make_report(StatementId::REMARK_EL, s.label, s.dim(), remark_body(k, l).volume(), s.vol(), tol_rel);
    r.lambda = l;
    r.note = note;
    out.push_back(std::move(r));
  }
  return out;
}

/// Combines the reduced averaged and difference-body inequalities with the
/// certificate coefficients. The report carries the reduced target
/// inequality; `alt` is the combined slack a*(slack of the averaged form) +
/// b*(slack of the difference-body form), which equals the target slack when
/// the coefficient identity holds.
inline InequalityReport verify_certificate_combination(int n, double lambda, const MixedVolumeProfile& p,
                                                       const std::string& label = "K",
                                                       double tol_rel = tol_verify_rel) {
  require_certificate_dim(n);
  if (p.n != n) fail(ErrorKind::DimensionMismatch, "profile dimension does not match n");
  const CertificateResult c = certificate(n, lambda);
  const ReducedSystem s = reduced_system(n, lambda);
  // Folded unknowns; the profile is symmetric up to round-off.
  const double v1 = 0.5 * (p.normalized(1) + p.normalized(n - 1));
  const double v2 = 0.5 * (p.normalized(2) + p.normalized(n - 2));
  auto lhs_of = [&](const std::array<double, 2>& w) { return w[0] * v1 + w[1] * v2; };

  const double slack_avg = simplex_value(n, s.avg) - lhs_of(s.avg);
  const double slack_diff = simplex_value(n, s.diff) - lhs_of(s.diff);
  InequalityReport r = make_report(StatementId::UNBALANCED, label, n, lhs_of(s.target), simplex_value(n, s.target), tol_rel);
  r.lambda = lambda;
  r.alt = c.a * slack_avg + c.b * slack_diff;
  r.note = "certificate combination";
  bool identity = true;
  for (int i = 0; i < 2; ++i) {
    const double combined = c.a * s.avg[i] + c.b * s.diff[i];
    if (std::abs(combined - s.target[i]) > 1e-12 * std::max(1.0, std::abs(s.target[i]))) identity = false;
  }
  if (!identity || !c.valid) {
    r.passed = false;
    r.note += identity ? "; negative coefficient" : "; coefficient identity violated";
  }
  return r;
}

}  // namespace godbersen
