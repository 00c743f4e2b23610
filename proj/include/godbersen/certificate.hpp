#pragma once

// Nonnegative-combination certificate for the unbalanced difference-body
// inequality in dimensions 4 and 5.
//
// With normalized V_j = V(K[j], -K[n-j]) / vol(K), the j = 0, n terms drop out
// and the j <-> n-j pairs fold, leaving two unknowns V_1, V_2. The averaged
// inequality (weights p, q) and the difference-body inequality (weights r)
// are combined with coefficients a, b >= 0 so that the combination has the
// same V-coefficients as the target. Solving the 2x2 system uses the explicit
// adjugate with c = 1/det.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "godbersen/combinatorics.hpp"
#include "godbersen/error.hpp"

namespace godbersen {

struct CertificateResult {
  int n = 0;
  double lambda = 0.0;
  double a = 0.0;
  double b = 0.0;
  double det = 0.0;
  double det_factored = 0.0;
  double residual = 0.0;  // max |M (a,b) - rhs|
  bool valid = false;
  bool boundary = false;
};

/// Folded coefficients of V_1 and V_2 in the three inequalities.
struct ReducedSystem {
  std::array<double, 2> avg;     // averaged inequality, left column
  std::array<double, 2> diff;    // difference-body inequality, right column
  std::array<double, 2> target;  // unbalanced inequality
};

inline void require_certificate_dim(int n) {
  if (n != 4 && n != 5) fail(ErrorKind::BadInput, "certificate exists for n = 4, 5 only");
}

inline ReducedSystem reduced_system(int n, double lambda) {
  require_certificate_dim(n);
  const double l = lambda, m = 1.0 - lambda;
  ReducedSystem s;
  if (n == 4) {
    const double p = l * l * l * m + l * m * m * m;
    const double q = l * l * m * m;
    s.avg = {p, q};
    s.diff = {8.0, 6.0};
    s.target = {4.0 * p, 6.0 * q};
  } else {
    const double p = l * l * l * l * m + l * m * m * m * m;
    const double q = l * l * m * m * m + l * l * l * m * m;
    s.avg = {p, q};
    // Each pair appears twice for odd n; the whole row is halved.
    s.diff = {5.0, 10.0};
    s.target = {5.0 * p, 10.0 * q};
  }
  return s;
}

/// Right-hand sides: each reduced inequality evaluated at the simplex profile V_j = C(n, j).
inline double simplex_value(int n, const std::array<double, 2>& coef) {
  return coef[0] * binomial(n, 1) + coef[1] * binomial(n, 2);
}

inline CertificateResult certificate(int n, double lambda) {
  require_certificate_dim(n);
  if (!(lambda >= 0.0 && lambda <= 1.0)) fail(ErrorKind::BadInput, "lambda outside [0,1]");
  const ReducedSystem s = reduced_system(n, lambda);
  const double m11 = s.avg[0], m12 = s.diff[0];
  const double m21 = s.avg[1], m22 = s.diff[1];
  const double r1 = s.target[0], r2 = s.target[1];

  CertificateResult out;
  out.n = n;
  out.lambda = lambda;
  out.det = m11 * m22 - m12 * m21;
  if (n == 4) {
    const double l = lambda;
    out.det_factored = 2.0 * l * (1 - l) * (3.0 * (1 - 2 * l) * (1 - 2 * l) + 2.0 * l * (1 - l));
  } else {
    out.det_factored = out.det;
  }

  if (lambda == 0.0 || lambda == 1.0) {
    // Singular system; the continuity limit is a = n, b = 0.
    out.boundary = true;
    out.a = n;
    out.b = 0.0;
  } else {
    const double c = 1.0 / out.det;
    out.a = c * (m22 * r1 - m12 * r2);
    out.b = c * (-m21 * r1 + m11 * r2);
  }
  out.residual = std::max(std::abs(m11 * out.a + m12 * out.b - r1), std::abs(m21 * out.a + m22 * out.b - r2));
  constexpr double tol = 1e-12;
  out.valid = out.a >= -tol && out.b >= -tol && (out.det > 0.0 || out.boundary);
  return out;
}

inline std::vector<CertificateResult> certificate_grid(int n, int points) {
  if (points < 2) fail(ErrorKind::BadInput, "certificate grid needs at least 2 points");
  std::vector<CertificateResult> out;
  out.reserve(points);
  for (int i = 0; i < points; ++i) out.push_back(certificate(n, static_cast<double>(i) / (points - 1)));
  return out;
}

/// lambda^j (1-lambda)^(n-j) + lambda^(n-j) (1-lambda)^j is nonincreasing in
/// j = 0..n/2.
inline bool symmetric_weight_monotonicity(int n, double lambda) {
  if (n < 1 || n > 8) fail(ErrorKind::BadInput, "monotonicity check supports n = 1..8");
  auto w = [&](int j) {
    return std::pow(lambda, j) * std::pow(1 - lambda, n - j) + std::pow(lambda, n - j) * std::pow(1 - lambda, j);
  };
  for (int j = 0; j + 1 <= n / 2; ++j)
    if (w(j + 1) > w(j) * (1 + 1e-14)) return false;
  return true;
}

inline std::string certificate_csv(const std::vector<CertificateResult>& rows) {
  std::string out = "n,lambda,a,b,det,valid\n";
  char buf[160];
  for (const CertificateResult& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%s\n", r.n, r.lambda, r.a, r.b, r.det,
                  r.valid ? "true" : "false");
    out += buf;
  }
  return out;
}

}  // namespace godbersen
