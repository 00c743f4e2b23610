// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Reference values are recomputed here from
// closed forms or independent code paths rather than read back from the
// library's own verifiers.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "godbersen/runner.hpp"

namespace {

using namespace godbersen;

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

/// Collects the worst deviation and the first few failures of one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  void expect_rel(double got, double want, double tol, const std::string& what) {
    const double r = rel(got, want);
    worst_ = std::max(worst_, r);
    expect(r <= tol, what + ": " + format_g17(got) + " vs " + format_g17(want));
  }
  bool ok() const { return failed_ == 0 && count_ > 0; }
  std::string summary() const {
    std::ostringstream os;
    os << count_ << " checks";
    if (worst_ > 0) os << ", worst rel. deviation " << worst_;
    if (failed_) os << ", " << failed_ << " failed";
    for (const std::string& f : failures_) os << "\n    " << f;
    return os.str();
  }

 private:
  int count_ = 0;
  int failed_ = 0;
  double worst_ = 0.0;
  std::vector<std::string> failures_;
};

std::vector<Subject> zoo_subjects(int lo, int hi) {
  std::vector<Subject> out;
  for (int n = lo; n <= hi; ++n)
    for (const BodySpec& s : default_zoo(n)) out.push_back(make_subject(s.label(), generate(s)));
  return out;
}

std::vector<VPolytope> seeded_bodies(int n, int count, std::uint64_t base) {
  std::vector<VPolytope> out;
  for (int i = 0; i < count; ++i) {
    const std::uint64_t seed = base + static_cast<std::uint64_t>(i);
    const Generator g = i % 2 ? Generator::RandomSphere : Generator::RandomGaussHull;
    out.push_back(generate({g, n, 2 * n + 4 + i, seed}));
  }
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 1. Simplex equality case.
void simplex_equality(Check& c) {
  for (int n = 2; n <= 5; ++n) {
    const VPolytope s = generate({Generator::Simplex, n});
    const MixedVolumeProfile p = mixed_volume_profile(s);
    const std::vector<double> ratios = godbersen_ratios(p);
    for (int j = 0; j <= n; ++j)
      c.expect(std::abs(ratios[static_cast<std::size_t>(j)] - 1.0) <= 1e-5,
               "n=" + std::to_string(n) + " ratio j=" + std::to_string(j) + " = " + format_g17(ratios[j]));
    double avg = 0.0;
    for (int j = 0; j <= n; ++j) avg += p.values[static_cast<std::size_t>(j)] / (binomial(n, j) * p.vol_K);
    avg /= n + 1;
    c.expect(std::abs(avg - 1.0) <= 1e-5, "n=" + std::to_string(n) + " average = " + format_g17(avg));
    const double diff = minkowski_sum(s, negate(s)).volume() / s.volume();
    c.expect_rel(diff, binomial(2 * n, n), 1e-5, "n=" + std::to_string(n) + " difference body ratio");
  }
}

// 2. Volume of the lifted body equals the weighted profile sum.
void lifted_volume_identity(Check& c) {
  for (int n = 2; n <= 3; ++n) {
    for (const VPolytope& k : seeded_bodies(n, 5, 100)) {
      const MixedVolumeProfile p = mixed_volume_profile(k);
      for (double l : uniform_grid(11)) {
        double sum = 0.0;
        for (int j = 0; j <= n; ++j) sum += std::pow(1 - l, n - j) * std::pow(l, j) * p.values[static_cast<std::size_t>(j)];
        c.expect_rel(build_C(k, l).body.volume(), sum / (n + 1), 1e-6,
                     "n=" + std::to_string(n) + " lambda=" + format_g17(l));
      }
    }
  }
}

// 3. Upper bound for the lifted body, tight for simplices.
void lifted_volume_bound(Check& c, const std::vector<Subject>& zoo) {
  for (const Subject& s : zoo) {
    const int n = s.dim();
    const bool simplex = s.label.rfind("SIMPLEX", 0) == 0;  // includes affine images
    for (double l : uniform_grid(default_grid_points)) {
      const double v = build_C(s.body, l).body.volume();
      const double bound = s.vol() / (n + 1);
      c.expect(v <= bound + 1e-9, s.label + " lambda=" + format_g17(l) + ": " + format_g17(v) + " > " + format_g17(bound));
      if (simplex) c.expect_rel(v, bound, 1e-5, s.label + " equality at lambda=" + format_g17(l));
    }
  }
}

// 4. Closed form for the volume of T.
void t_closed_form(Check& c) {
  const double fact[] = {1, 1, 2, 6, 24, 120, 720, 5040};
  auto closed = [&](int n, const VPolytope& a, const VPolytope& b) {
    return fact[n] * fact[n] / fact[2 * n + 1] * a.volume() * b.volume();
  };
  Matrix seg(1, 2);
  seg << 0.0, 1.0;
  const VPolytope unit = VPolytope::hull_of(seg);
  c.expect_rel(build_T(unit, unit).body.volume(), 1.0 / 6.0, 1e-6, "unit segments");
  const VPolytope sq = generate({Generator::Cube, 2});
  c.expect_rel(build_T(sq, sq).body.volume(), 1.0 / 30.0, 1e-6, "unit squares");
  for (int n = 1; n <= 2; ++n) {
    const std::vector<VPolytope> a = seeded_bodies(n, 3, 200);
    const std::vector<VPolytope> b = seeded_bodies(n, 3, 300);
    for (std::size_t i = 0; i < a.size(); ++i)
      c.expect_rel(build_T(a[i], b[i]).body.volume(), closed(n, a[i], b[i]), 1e-6, "n=" + std::to_string(n) + " pair");
  }
  const VPolytope cube3 = generate({Generator::Cube, 3});
  c.expect_rel(build_T(cube3, cube3).body.volume(), 1.0 / 140.0, 1e-4, "n=3 unit cubes");
  const VPolytope k3 = seeded_bodies(3, 1, 400)[0];
  c.expect_rel(build_T(k3, cube3).body.volume(), closed(3, k3, cube3), 1e-4, "n=3 smoke");
}

// 5. Section and projection of T with K1 = lambda K, K2 = (1 - lambda) K.
void t_section_projection(Check& c) {
  for (int n = 1; n <= 2; ++n) {
    for (const VPolytope& k : seeded_bodies(n, 3, 500)) {
      for (double l : {0.2, 0.5, 0.7}) {
        const LiftedBodyT t = build_T(scale(k, l), scale(k, 1 - l));
        const std::string tag = "n=" + std::to_string(n) + " lambda=" + format_g17(l);
        c.expect(vertex_sets_match(section_T(t, 1 - l), scale(k, l * (1 - l)), 1e-8), tag + " section vertices");
        c.expect_rel(project_T(t).volume(), build_C(k, l).body.volume(), 1e-7, tag + " projection volume");
      }
    }
  }
}

// 6. Certificate coefficients on a dense grid.
void certificate_grid_check(Check& c) {
  for (int n : {4, 5}) {
    for (const CertificateResult& r : certificate_grid(n, 1001)) {
      const double l = r.lambda, m = 1 - l;
      const std::string tag = "n=" + std::to_string(n) + " lambda=" + format_g17(l);
      c.expect(r.a >= -1e-12 && r.b >= -1e-12, tag + " negative coefficient");
      c.expect(r.det >= 0.0, tag + " negative determinant");
      double p, q, m00, m01, m10, m11, r0, r1;
      if (n == 4) {
        p = l * l * l * m + l * m * m * m;
        q = l * l * m * m;
        m00 = p, m01 = 8, m10 = q, m11 = 6, r0 = 4 * p, r1 = 6 * q;
        const double factored = 2 * l * m * (3 * (1 - 2 * l) * (1 - 2 * l) + 2 * l * m);
        c.expect(std::abs(r.det - factored) <= 1e-12, tag + " determinant factorization");
      } else {
        p = l * l * l * l * m + l * m * m * m * m;
        q = l * l * m * m * m + l * l * l * m * m;
        m00 = p, m01 = 5, m10 = q, m11 = 10, r0 = 5 * p, r1 = 10 * q;
      }
      c.expect(std::abs(r.det - (m00 * m11 - m01 * m10)) <= 1e-12, tag + " determinant");
      const double residual = std::max(std::abs(m00 * r.a + m01 * r.b - r0), std::abs(m10 * r.a + m11 * r.b - r1));
      c.expect(residual <= 1e-12, tag + " residual " + format_g17(residual));
    }
  }
}

// 7. Unbalanced difference-body inequality in its proven range.
void unbalanced(Check& c, const std::vector<Subject>& zoo) {
  const std::vector<double> grid = uniform_grid(default_grid_points);
  for (const Subject& s : zoo) {
    const int n = s.dim();
    const std::vector<double> pts = n >= 4 ? grid : std::vector<double>{0.0, 0.5, 1.0};
    for (const InequalityReport& r : verify_unbalanced(s, pts)) {
      const std::string tag = s.label + " lambda=" + format_g17(*r.lambda);
      c.expect(r.passed && r.asserted, tag + ": " + format_g17(r.lhs) + " > " + format_g17(r.rhs));
      if (*r.lambda == 0.0 || *r.lambda == 1.0) c.expect(r.lhs == r.rhs && r.lhs == 1.0, tag + " endpoint not exact");
    }
    // lambda = 1/2 through the difference body itself.
    const double half = minkowski_sum(scale(s.body, 0.5), scale(s.body, -0.5)).volume() / s.vol();
    c.expect(half <= binomial(2 * n, n) / std::pow(2.0, n) * (1 + tol_verify_rel), s.label + " difference body at 1/2");
    if (n == 4 || n == 5)
      for (double l : grid) {
        const InequalityReport r = verify_certificate_combination(n, l, s.profile, s.label);
        c.expect(r.passed, s.label + " certificate combination at " + format_g17(l) + " " + r.note);
      }
  }
}

// 8. Product inequality for conv(K u -L) and the polar sum.
void strange(Check& c) {
  for (int n = 2; n <= 3; ++n) {
    const std::vector<VPolytope> ks = seeded_bodies(n, 10, 600);
    const std::vector<VPolytope> ls = seeded_bodies(n, 10, 700);
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const VPolytope k = recenter(ks[i]);
      const VPolytope l = recenter(ls[i]);
      const std::string tag = "n=" + std::to_string(n) + " pair " + std::to_string(i);
      const InequalityReport r = verify_strange(k, l, tag);
      c.expect(r.passed, tag + ": " + format_g17(r.lhs) + " > " + format_g17(r.rhs));
      const VPolytope d = build_diag_C(k, l);
      const double root = std::pow(std::sqrt(2.0), n);
      c.expect_rel(diag_section(d, 0.5).volume(), root * polar_sum_body(k, l).volume(), 1e-6, tag + " section");
      c.expect_rel(diag_projection(d, 0.5).volume(), conv_union(k, l).volume() / root, 1e-6, tag + " projection");
      c.expect_rel(d.volume(), k.volume() * l.volume() / binomial(2 * n, n), 1e-6, tag + " diagonal body volume");
    }
  }
}

// 9. Profile against inclusion-exclusion, plus structural properties.
void profile_cross_check(Check& c, const std::vector<Subject>& zoo) {
  for (int n = 2; n <= 4; ++n) {
    for (const VPolytope& k : seeded_bodies(n, 5, 800)) {
      const MixedVolumeProfile p = mixed_volume_profile(k);
      const VPolytope minus = negate(k);
      for (int j = 0; j <= n; ++j)
        c.expect_rel(p.values[static_cast<std::size_t>(j)], polarization_mixed_volume(k, j, minus), 1e-6,
                     "n=" + std::to_string(n) + " j=" + std::to_string(j));
    }
  }
  for (const Subject& s : zoo) {
    const int n = s.dim();
    const auto& v = s.profile.values;
    c.expect(v.front() == s.vol(), s.label + " V_0 differs from vol");
    c.expect_rel(v.back(), s.vol(), 1e-9, s.label + " V_n");
    for (int j = 0; j <= n; ++j) {
      c.expect_rel(v[static_cast<std::size_t>(j)], v[static_cast<std::size_t>(n - j)], 1e-6,
                   s.label + " symmetry j=" + std::to_string(j));
      c.expect(v[static_cast<std::size_t>(j)] >= s.vol() * (1 - tol_verify_rel), s.label + " Alexandrov j=" + std::to_string(j));
    }
  }
}

// 10. Two sweeps with the same configuration write identical CSV files.
void determinism(Check& c) {
  const auto base = std::filesystem::temp_directory_path() / "godbersen_acceptance";
  std::filesystem::remove_all(base);
  std::vector<std::string> files;
  for (const char* run : {"a", "b"}) {
    RunConfig cfg = default_config();
    cfg.out_dir = (base / run).string();
    const SweepResult r = run_sweep(cfg);
    c.expect(r.violations() == 0, std::string("sweep ") + run + " reported violations");
  }
  for (const char* f : {"reports.csv", "certificate_n4.csv", "certificate_n5.csv"}) {
    const std::string a = slurp(base / "a" / f);
    c.expect(!a.empty() && a == slurp(base / "b" / f), std::string(f) + " differs between runs");
  }
  std::filesystem::remove_all(base);
}

}  // namespace

int main() {
  const std::vector<Subject> zoo = zoo_subjects(2, 5);
  const std::vector<Subject> zoo_all = zoo_subjects(1, 5);
  struct Criterion {
    const char* name;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"simplex equality suite (ratios, average, difference body) at 1e-5", simplex_equality},
      {"lifted body volume equals weighted profile sum, rel 1e-6", lifted_volume_identity},
      {"lifted body volume bound on the zoo, tight for simplices", [&](Check& c) { lifted_volume_bound(c, zoo); }},
      {"T volume closed form (n = 1, 2 at 1e-6; n = 3 at 1e-4)", t_closed_form},
      {"T section vertices at 1e-8 and projection volume at 1e-7", t_section_projection},
      {"certificate grid n = 4, 5: signs, determinant, residual", certificate_grid_check},
      {"unbalanced inequality on the zoo, exact endpoints", [&](Check& c) { unbalanced(c, zoo_all); }},
      {"conv-union / polar-sum product with sqrt(2) factors, rel 1e-6", strange},
      {"profile vs polarization at 1e-6, symmetry, endpoints, Alexandrov", [&](Check& c) { profile_cross_check(c, zoo); }},
      {"byte-identical CSV from two sweeps", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      criteria[i].run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    failed += !c.ok();
    std::printf("%s %zu %s (%s)\n", c.ok() ? "PASS" : "FAIL", i + 1, criteria[i].name, c.summary().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
