#pragma once

// Mixed volumes V(K[j], -K[n-j]) from the one-parameter volume polynomial
//
//   vol((1-t)K + t(-K)) = sum_j C(n,j) t^j (1-t)^(n-j) V_j,
//
// recovered by collocation in the Bernstein basis, plus a general mixed
// volume through inclusion-exclusion over Minkowski sub-sums.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "godbersen/combinatorics.hpp"
#include "godbersen/error.hpp"
#include "godbersen/polytope.hpp"
#include "godbersen/tolerances.hpp"

namespace godbersen {

struct MixedVolumeProfile {
  int n = 0;
  double vol_K = 0.0;
  std::vector<double> values;  // V_0..V_n
  double condition_estimate = 1.0;

  /// V_j / vol(K).
  double normalized(int j) const { return values[static_cast<std::size_t>(j)] / vol_K; }
};

/// vol((1-t)K + t(-K)), the unbalanced difference body volume.
inline double blend_volume(const VPolytope& k, double t) {
  if (!(t >= 0.0 && t <= 1.0)) fail(ErrorKind::BadInput, "blend parameter outside [0,1]");
  if (t == 0.0 || t == 1.0) return k.volume();
  return minkowski_sum(scale(k, 1.0 - t), scale(k, -t)).volume();
}

/// Bernstein collocation matrix at the uniform nodes i/n.
inline Matrix bernstein_collocation(int n) {
  Matrix b(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) b(i, j) = bernstein(n, j, static_cast<double>(i) / n);
  return b;
}

inline MixedVolumeProfile mixed_volume_profile(const VPolytope& k) {
  const int n = k.dim();
  if (n > 8) fail(ErrorKind::BadInput, "profiles are supported up to dimension 8");
  MixedVolumeProfile p;
  p.n = n;
  p.vol_K = k.volume();
  const Matrix b = bernstein_collocation(n);
  Eigen::JacobiSVD<Matrix> svd(b);
  const auto& sv = svd.singularValues();
  p.condition_estimate = sv(0) / sv(sv.size() - 1);
  if (!(p.condition_estimate <= interp_cond_max))
    fail(ErrorKind::IllConditioned, "Bernstein collocation system is ill-conditioned");
  Vector rhs(n + 1);
  for (int i = 0; i <= n; ++i) rhs(i) = blend_volume(k, static_cast<double>(i) / n);
  const Vector v = b.partialPivLu().solve(rhs);
  p.values.assign(v.data(), v.data() + v.size());
  return p;
}

/// sum_j C(n,j) t^j (1-t)^(n-j) V_j evaluated from a profile.
inline double profile_polynomial(const MixedVolumeProfile& p, double t) {
  double s = 0.0;
  for (int j = 0; j <= p.n; ++j) s += bernstein(p.n, j, t) * p.values[static_cast<std::size_t>(j)];
  return s;
}

/// V(K_1, ..., K_n) = (1/n!) sum over nonempty S of (-1)^(n-|S|) vol(sum_{i in S} K_i).
inline double polarization_mixed_volume(std::span<const VPolytope> bodies) {
  const int n = static_cast<int>(bodies.size());
  if (n == 0) fail(ErrorKind::BadInput, "no bodies");
  if (n > 5) fail(ErrorKind::BadInput, "polarization is limited to n <= 5");
  for (const VPolytope& b : bodies)
    if (b.dim() != n) fail(ErrorKind::DimensionMismatch, "need n bodies in R^n");
  const std::uint32_t full = (1u << n) - 1u;
  std::vector<std::optional<VPolytope>> sums(full + 1);
  double total = 0.0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    int top = 31 - __builtin_clz(mask);
    const std::uint32_t rest = mask & ~(1u << top);
    sums[mask] = rest == 0 ? bodies[static_cast<std::size_t>(top)]
                           : minkowski_sum(*sums[rest], bodies[static_cast<std::size_t>(top)]);
    const int size = __builtin_popcount(mask);
    total += ((n - size) % 2 == 0 ? 1.0 : -1.0) * sums[mask]->volume();
  }
  return total / factorial(n);
}

/// V(K[j], L[n-j]) through the polarization identity.
inline double polarization_mixed_volume(const VPolytope& k, int j, const VPolytope& l) {
  const int n = k.dim();
  if (l.dim() != n) fail(ErrorKind::DimensionMismatch, "bodies of different dimension");
  if (j < 0 || j > n) fail(ErrorKind::BadInput, "multiplicity outside 0..n");
  std::vector<VPolytope> args;
  for (int i = 0; i < j; ++i) args.push_back(k);
  for (int i = j; i < n; ++i) args.push_back(l);
  return polarization_mixed_volume(std::span<const VPolytope>(args));
}

/// r_j = V_j / (C(n,j) vol K); Godbersen's conjecture asserts r_j <= 1.
inline std::vector<double> godbersen_ratios(const MixedVolumeProfile& p) {
  if (p.values.size() != static_cast<std::size_t>(p.n + 1) || !(p.vol_K > 0.0))
    fail(ErrorKind::BadInput, "invalid profile");
  std::vector<double> r(p.values.size());
  for (int j = 0; j <= p.n; ++j) r[static_cast<std::size_t>(j)] = p.values[static_cast<std::size_t>(j)] / (binomial(p.n, j) * p.vol_K);
  return r;
}

}  // namespace godbersen
