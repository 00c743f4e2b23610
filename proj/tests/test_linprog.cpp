#include <gtest/gtest.h>

#include "godbersen/linprog.hpp"

namespace godbersen::lp {
namespace {

TEST(DenseSimplex, SolvesTextbookProgram) {
  // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), value 36.
  Eigen::MatrixXd a(3, 2);
  a << 1, 0, 0, 2, 3, 2;
  Eigen::VectorXd b(3);
  b << 4, 12, 18;
  Eigen::VectorXd c(2);
  c << 3, 5;
  const Result r = DenseSimplex(a, b, c).solve();
  ASSERT_EQ(r.status, Status::Optimal);
  EXPECT_NEAR(r.value, 36.0, 1e-12);
  EXPECT_NEAR(r.x(0), 2.0, 1e-12);
  EXPECT_NEAR(r.x(1), 6.0, 1e-12);
}

TEST(DenseSimplex, DetectsInfeasibleAndUnbounded) {
  Eigen::MatrixXd a(2, 1);
  a << 1, -1;
  Eigen::VectorXd b(2);
  b << 1, -2;  // x <= 1 and x >= 2
  Eigen::VectorXd c(1);
  c << 1;
  EXPECT_EQ(DenseSimplex(a, b, c).solve().status, Status::Infeasible);

  Eigen::MatrixXd a2(1, 1);
  a2 << -1;
  Eigen::VectorXd b2(1);
  b2 << 0;
  EXPECT_EQ(DenseSimplex(a2, b2, c).solve().status, Status::Unbounded);
}

TEST(MaxSlack, FindsInscribedCenterOfSquare) {
  // [1,3] x [0,2] written as four halfspaces: center (2,1), inradius 1.
  Eigen::MatrixXd g(4, 2);
  g << 1, 0, -1, 0, 0, 1, 0, -1;
  Eigen::VectorXd h(4);
  h << 3, -1, 2, 0;
  const MaxSlack ms = max_slack(g, h, 100.0);
  EXPECT_NEAR(ms.slack, 1.0, 1e-12);
  EXPECT_NEAR(ms.point(0), 2.0, 1e-12);
  EXPECT_NEAR(ms.point(1), 1.0, 1e-12);
}

TEST(MaxSlack, ReportsNegativeSlackForEmptySystem) {
  Eigen::MatrixXd g(2, 1);
  g << 1, -1;
  Eigen::VectorXd h(2);
  h << 0, -1;  // x <= 0 and x >= 1
  EXPECT_LT(max_slack(g, h, 10.0).slack, 0.0);
}

}  // namespace
}  // namespace godbersen::lp
