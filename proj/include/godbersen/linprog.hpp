#pragma once

// Small dense linear programming used for interior witnesses (max-slack /
// Chebyshev-type centers) and support-function evaluation on H-polytopes.
// Problem sizes are a few hundred constraints by at most a dozen variables,
// so a two-phase tableau simplex is adequate.

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "godbersen/error.hpp"

namespace godbersen::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  double value = 0.0;
  Eigen::VectorXd x;
};

/// maximize c.x subject to A x <= b, x >= 0.
class DenseSimplex {
 public:
  DenseSimplex(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c)
      : m_(static_cast<int>(b.size())),
        n_(static_cast<int>(c.size())),
        nonbasic_(n_ + 1),
        basic_(m_),
        tab_(Eigen::MatrixXd::Zero(m_ + 2, n_ + 2)) {
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) tab_(i, j) = A(i, j);
      basic_[i] = n_ + i;
      tab_(i, n_) = -1.0;
      tab_(i, n_ + 1) = b(i);
    }
    for (int j = 0; j < n_; ++j) {
      nonbasic_[j] = j;
      tab_(m_, j) = -c(j);
    }
    nonbasic_[n_] = -1;
    tab_(m_ + 1, n_) = 1.0;
  }

  Result solve() {
    Result res;
    int r = 0;
    for (int i = 1; i < m_; ++i)
      if (tab_(i, n_ + 1) < tab_(r, n_ + 1)) r = i;
    if (m_ > 0 && tab_(r, n_ + 1) < -kEps) {
      pivot(r, n_);
      if (!run(1) || tab_(m_ + 1, n_ + 1) < -kEps) {
        res.status = Status::Infeasible;
        return res;
      }
      for (int i = 0; i < m_; ++i) {
        if (basic_[i] != -1) continue;
        int s = -1;
        for (int j = 0; j <= n_; ++j)
          if (s == -1 || tab_(i, j) < tab_(i, s) ||
              (tab_(i, j) == tab_(i, s) && nonbasic_[j] < nonbasic_[s]))
            s = j;
        pivot(i, s);
      }
    }
    if (!run(2)) {
      res.status = Status::Unbounded;
      res.value = std::numeric_limits<double>::infinity();
      return res;
    }
    res.status = Status::Optimal;
    res.x = Eigen::VectorXd::Zero(n_);
    for (int i = 0; i < m_; ++i)
      if (basic_[i] >= 0 && basic_[i] < n_) res.x(basic_[i]) = tab_(i, n_ + 1);
    res.value = tab_(m_, n_ + 1);
    return res;
  }

 private:
  static constexpr double kEps = 1e-12;

  void pivot(int r, int s) {
    const double inv = 1.0 / tab_(r, s);
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r || tab_(i, s) == 0.0) continue;
      const double f = tab_(i, s) * inv;
      for (int j = 0; j < n_ + 2; ++j)
        if (j != s) tab_(i, j) -= tab_(r, j) * f;
    }
    for (int j = 0; j < n_ + 2; ++j)
      if (j != s) tab_(r, j) *= inv;
    for (int i = 0; i < m_ + 2; ++i)
      if (i != r) tab_(i, s) *= -inv;
    tab_(r, s) = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  bool run(int phase) {
    const int row = phase == 1 ? m_ + 1 : m_;
    const int max_iter = 50 * (m_ + n_ + 10);
    for (int iter = 0; iter < max_iter; ++iter) {
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (phase == 2 && nonbasic_[j] == -1) continue;
        if (s == -1 || tab_(row, j) < tab_(row, s) ||
            (tab_(row, j) == tab_(row, s) && nonbasic_[j] < nonbasic_[s]))
          s = j;
      }
      if (tab_(row, s) > -kEps) return true;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (tab_(i, s) < kEps) continue;
        if (r == -1) {
          r = i;
          continue;
        }
        const double lhs = tab_(i, n_ + 1) / tab_(i, s);
        const double rhs = tab_(r, n_ + 1) / tab_(r, s);
        if (lhs < rhs || (lhs == rhs && basic_[i] < basic_[r])) r = i;
      }
      if (r == -1) return false;
      pivot(r, s);
    }
    fail(ErrorKind::NumericalFailure, "simplex iteration limit reached");
  }

  int m_, n_;
  std::vector<int> nonbasic_, basic_;
  Eigen::MatrixXd tab_;
};

/// maximize c.x subject to A x <= b with x free (split into positive parts).
inline Result maximize_free(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                            const Eigen::VectorXd& c) {
  const Eigen::Index n = c.size();
  Eigen::MatrixXd split(A.rows(), 2 * n);
  split << A, -A;
  Eigen::VectorXd c2(2 * n);
  c2 << c, -c;
  Result r = DenseSimplex(split, b, c2).solve();
  if (r.status == Status::Optimal) r.x = (r.x.head(n) - r.x.tail(n)).eval();
  return r;
}

struct MaxSlack {
  Eigen::VectorXd point;
  double slack = 0.0;
};

/// Point maximizing the smallest normalized slack of G u <= h, capped at
/// `cap`. Rows with vanishing normal are the caller's responsibility.
inline MaxSlack max_slack(const Eigen::MatrixXd& G, const Eigen::VectorXd& h, double cap) {
  const Eigen::Index m = G.rows();
  const Eigen::Index j = G.cols();
  Eigen::MatrixXd A(m + 1, j + 1);
  Eigen::VectorXd b(m + 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double nrm = G.row(i).norm();
    A.row(i).head(j) = G.row(i) / nrm;
    A(i, j) = 1.0;
    b(i) = h(i) / nrm;
  }
  A.row(m).setZero();
  A(m, j) = 1.0;
  b(m) = cap;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(j + 1);
  c(j) = 1.0;
  Result r = maximize_free(A, b, c);
  if (r.status != Status::Optimal)
    fail(ErrorKind::NumericalFailure, "max-slack program did not reach an optimum");
  MaxSlack out;
  out.point = r.x.head(j);
  // Recompute the slack directly so the witness never relies on tableau drift.
  double s = cap;
  for (Eigen::Index i = 0; i < m; ++i)
    s = std::min(s, (h(i) - G.row(i).dot(out.point)) / G.row(i).norm());
  out.slack = s;
  return out;
}

}  // namespace godbersen::lp
