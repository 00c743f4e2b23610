#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "godbersen/body_zoo.hpp"
#include "godbersen/mixed_volume.hpp"

namespace godbersen {
namespace {

// Independent planar oracle: 2 V(K, L) = sum over edges e of L of
// h_K(outer normal of e) * |e|, with the polygon ordered by angle.
double mixed_area_oracle(const VPolytope& k, const VPolytope& l) {
  const Matrix& v = l.vertices();
  const Vector c = v.rowwise().mean();
  std::vector<int> idx(v.cols());
  for (int i = 0; i < v.cols(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return std::atan2(v(1, a) - c(1), v(0, a) - c(0)) < std::atan2(v(1, b) - c(1), v(0, b) - c(0));
  });
  double s = 0.0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const Vector e = v.col(idx[(i + 1) % idx.size()]) - v.col(idx[i]);
    const Vector u = Vector{{e(1), -e(0)}} / e.norm();  // outward for counter-clockwise order
    double h = -1e300;
    for (int j = 0; j < k.num_vertices(); ++j) h = std::max(h, u.dot(k.vertex(j)));
    s += h * e.norm();
  }
  return s / 2.0;
}

VPolytope triangle() { return generate({Generator::Simplex, 2}); }

TEST(BlendVolume, EndpointsShortCircuit) {
  const VPolytope k = generate({Generator::RandomGaussHull, 3, 12, 8});
  EXPECT_EQ(blend_volume(k, 0.0), k.volume());
  EXPECT_EQ(blend_volume(k, 1.0), k.volume());
  EXPECT_THROW(blend_volume(k, 1.5), GeometryError);
}

TEST(BlendVolume, SymmetricBodyIsConstant) {
  for (int n = 2; n <= 4; ++n) {
    const VPolytope cube = generate({Generator::Cube, n});
    for (double t : {0.1, 0.37, 0.5, 0.9}) EXPECT_NEAR(blend_volume(cube, t), 1.0, 1e-12);
  }
}

TEST(BlendVolume, TriangleAtHalf) {
  // (1/2)(Δ - Δ) is the hexagon of area 3 scaled by 1/2.
  EXPECT_NEAR(blend_volume(triangle(), 0.5), 0.75, 1e-14);
}

TEST(Profile, CubeIsFlat) {
  for (int n = 2; n <= 5; ++n) {
    const MixedVolumeProfile p = mixed_volume_profile(generate({Generator::Cube, n}));
    for (double v : p.values) EXPECT_NEAR(v, 1.0, 1e-10) << n;
  }
}

TEST(Profile, TriangleSaturatesGodbersen) {
  const MixedVolumeProfile p = mixed_volume_profile(triangle());
  ASSERT_EQ(p.values.size(), 3u);
  EXPECT_NEAR(p.values[0], 0.5, 1e-13);
  EXPECT_NEAR(p.values[1], 1.0, 1e-13);
  EXPECT_NEAR(p.values[2], 0.5, 1e-13);
  EXPECT_NEAR(godbersen_ratios(p)[1], 1.0, 1e-12);
}

TEST(Profile, TetrahedronMatchesPolarization) {
  const VPolytope s = generate({Generator::Simplex, 3});
  const MixedVolumeProfile p = mixed_volume_profile(s);
  const VPolytope ns = negate(s);
  // Oracle values from inclusion-exclusion over Minkowski sub-sums.
  const double v1 = polarization_mixed_volume(s, 1, ns);
  const double v2 = polarization_mixed_volume(s, 2, ns);
  EXPECT_NEAR(v1, 0.5, 1e-12);
  EXPECT_NEAR(v2, 0.5, 1e-12);
  EXPECT_NEAR(p.values[1], v1, 1e-10);
  EXPECT_NEAR(p.values[2], v2, 1e-10);
  EXPECT_NEAR(p.values[0], 1.0 / 6.0, 1e-12);
}

TEST(Profile, PlanarProfileMatchesSupportFunctionOracle) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const VPolytope k = generate({Generator::RandomGaussHull, 2, 9, seed});
    const MixedVolumeProfile p = mixed_volume_profile(k);
    const double oracle = mixed_area_oracle(k, negate(k));
    EXPECT_NEAR(p.values[1], oracle, 1e-9 * oracle) << seed;
  }
}

TEST(Profile, ReconstructsHeldOutBlendValues) {
  for (int n = 2; n <= 4; ++n) {
    const VPolytope k = generate({Generator::RandomSphere, n, 2 * n + 3, 40u + n});
    const MixedVolumeProfile p = mixed_volume_profile(k);
    for (int i = 0; i < 10; ++i) {
      const double t = 0.05 + 0.09 * i + 0.013;
      const double direct = blend_volume(k, t);
      EXPECT_NEAR(profile_polynomial(p, t), direct, 1e-6 * direct) << "n=" << n << " t=" << t;
    }
  }
}

TEST(Profile, ConditionEstimateIsRecorded) {
  for (int n = 1; n <= 8; ++n) {
    Eigen::JacobiSVD<Matrix> svd(bernstein_collocation(n));
    const double cond = svd.singularValues()(0) / svd.singularValues()(n);
    EXPECT_LT(cond, interp_cond_max);
  }
  const MixedVolumeProfile p = mixed_volume_profile(generate({Generator::Cross, 3}));
  EXPECT_GT(p.condition_estimate, 1.0);
}

TEST(Profile, InvariantsAcrossZoo) {
  for (int n = 2; n <= 4; ++n) {
    for (const BodySpec& spec : default_zoo(n, 17)) {
      const MixedVolumeProfile p = mixed_volume_profile(generate(spec));
      const double vol = p.vol_K;
      EXPECT_NEAR(p.values.front(), vol, 1e-7 * vol) << spec.label();
      EXPECT_NEAR(p.values.back(), vol, 1e-7 * vol) << spec.label();
      for (int j = 0; j <= n; ++j) {
        EXPECT_NEAR(p.values[j], p.values[n - j], 1e-7 * p.values[j]) << spec.label();
        EXPECT_GE(p.values[j], vol * (1 - 1e-7)) << spec.label();
      }
    }
  }
}

TEST(Polarization, DiagonalIsVolume) {
  for (int n = 1; n <= 4; ++n) {
    const VPolytope k = generate({Generator::RandomGaussHull, n, 3 * n + 2, 5u + n});
    EXPECT_NEAR(polarization_mixed_volume(k, n, k), k.volume(), 1e-10 * k.volume()) << n;
  }
}

TEST(Polarization, HomogeneousInOneArgument) {
  const VPolytope k = generate({Generator::RandomSphere, 3, 9, 3});
  const std::vector<VPolytope> plain{k, k, k};
  const std::vector<VPolytope> scaled{k, k, scale(k, 2.5)};
  EXPECT_NEAR(polarization_mixed_volume(scaled), 2.5 * polarization_mixed_volume(plain), 1e-10);
}

TEST(Polarization, SymmetricUnderPermutation) {
  const VPolytope a = generate({Generator::RandomGaussHull, 3, 8, 1});
  const VPolytope b = generate({Generator::RandomSphere, 3, 8, 2});
  const VPolytope c = generate({Generator::Cube, 3});
  const std::vector<VPolytope> abc{a, b, c};
  const std::vector<VPolytope> cab{c, a, b};
  const std::vector<VPolytope> bca{b, c, a};
  const double v = polarization_mixed_volume(abc);
  EXPECT_NEAR(polarization_mixed_volume(cab), v, 1e-10 * v);
  EXPECT_NEAR(polarization_mixed_volume(bca), v, 1e-10 * v);
}

TEST(Polarization, TriangleAgainstItsReflection) {
  // (vol(Δ - Δ) - vol Δ - vol(-Δ)) / 2 = (3 - 1/2 - 1/2) / 2.
  EXPECT_NEAR(polarization_mixed_volume(triangle(), 1, negate(triangle())), 1.0, 1e-13);
}

TEST(Polarization, RejectsLargeOrMismatchedInput) {
  const VPolytope k = generate({Generator::Simplex, 6});
  const std::vector<VPolytope> six(6, k);
  EXPECT_THROW(polarization_mixed_volume(six), GeometryError);
  const std::vector<VPolytope> wrong{generate({Generator::Simplex, 3}), generate({Generator::Simplex, 3})};
  EXPECT_THROW(polarization_mixed_volume(wrong), GeometryError);
}

TEST(GodbersenRatios, KnownBodies) {
  for (int n = 2; n <= 5; ++n) {
    for (double r : godbersen_ratios(mixed_volume_profile(generate({Generator::Simplex, n}))))
      EXPECT_NEAR(r, 1.0, 1e-6) << n;
  }
  const std::vector<double> cube = godbersen_ratios(mixed_volume_profile(generate({Generator::Cube, 3})));
  EXPECT_NEAR(cube[0], 1.0, 1e-10);
  EXPECT_NEAR(cube[1], 1.0 / 3.0, 1e-10);
  EXPECT_NEAR(cube[2], 1.0 / 3.0, 1e-10);
  EXPECT_NEAR(cube[3], 1.0, 1e-10);
}

TEST(GodbersenRatios, ExtremeIndicesHoldOnRandomBodies) {
  for (int n = 2; n <= 4; ++n) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const VPolytope k = recenter(generate({Generator::RandomGaussHull, n, 3 * n, seed}));
      const std::vector<double> r = godbersen_ratios(mixed_volume_profile(k));
      EXPECT_LE(r[1], 1.0 + 1e-7);
      EXPECT_LE(r[n - 1], 1.0 + 1e-7);
    }
  }
}

TEST(GodbersenRatios, AffineInvariance) {
  for (int n = 2; n <= 4; ++n) {
    const VPolytope k = generate({Generator::RandomSphere, n, 2 * n + 2, 77u + n});
    const AffineTransform t = random_affine(n, 900u + n);
    const VPolytope mk = affine_image(k, t.matrix, t.translation);
    const std::vector<double> a = godbersen_ratios(mixed_volume_profile(k));
    const std::vector<double> b = godbersen_ratios(mixed_volume_profile(mk));
    for (int j = 0; j <= n; ++j) EXPECT_NEAR(a[j], b[j], 1e-6) << n << " " << j;
  }
}

TEST(GodbersenRatios, RejectsInvalidProfile) {
  MixedVolumeProfile p;
  p.n = 2;
  p.vol_K = 1.0;
  p.values = {1.0, 2.0};
  EXPECT_THROW(godbersen_ratios(p), GeometryError);
}

}  // namespace
}  // namespace godbersen
