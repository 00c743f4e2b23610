#pragma once

#include <cmath>

namespace godbersen {

inline double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return std::round(c);
}

/// C(n,j) lambda^j (1-lambda)^(n-j).
inline double bernstein(int n, int j, double lambda) {
  return binomial(n, j) * std::pow(lambda, j) * std::pow(1.0 - lambda, n - j);
}

}  // namespace godbersen
