#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"
#include "tubenorm/mapped_solver.hpp"

using namespace tubenorm;
using testsupport::circle_at;
using testsupport::defect_l2;
using testsupport::perturbed_circle;
using testsupport::random_admissible_field;

TEST_CASE("annulus oracle: frozen values and limits") {
  CHECK(annulus_norm_exact(1.0, 0.1) == Catch::Approx(4.1915974547e-3).epsilon(1e-9));
  CHECK(annulus_norm_exact(1.0, 0.05) == Catch::Approx(5.2368615652e-4).epsilon(1e-9));
  // strip limit: value / eps^3 -> 4 pi / 3
  double prev = kInf;
  for (double e : {1e-2, 1e-3, 1e-4}) {
    const double ratio = annulus_norm_exact(1.0, e) / (e * e * e);
    CHECK(ratio > 4.0 * kPi / 3.0);
    CHECK(ratio < prev);
    prev = ratio;
  }
  CHECK(annulus_norm_exact(1.0, 1e-4) / 1e-12 == Catch::Approx(4.0 * kPi / 3.0).epsilon(1e-7));
  // squared norm scales as length^4
  CHECK(annulus_norm_exact(2.0, 0.2) ==
        Catch::Approx(16.0 * annulus_norm_exact(1.0, 0.1)).epsilon(1e-12));
  CHECK_THROWS_AS(annulus_norm_exact(1.0, 1.0), BadRadii);
  CHECK_THROWS_AS(annulus_norm_exact(1.0, 0.0), BadRadii);
}

TEST_CASE("solve_closed: unit circle matches the annulus oracle") {
  Curve c = make_circle(1.0);
  for (double eps : {0.1, 0.05}) {
    const auto [field, res] = solve_closed(c, eps, 512, 65);
    const double oracle = annulus_norm_exact(1.0, eps);
    CHECK(res.norm_sq == Catch::Approx(oracle).epsilon(1e-4));
    CHECK(res.residual < 1e-10);
    // the two norm evaluations agree at the discrete optimum
    CHECK(std::abs(res.norm_sq - res.functional_value) < 1e-9 * res.norm_sq);
  }
}

TEST_CASE("solve_closed: two-term development at eps = 0.05") {
  Curve c = make_circle(1.0);
  const auto [field, res] = solve_closed(c, 0.05, 512, 65);
  const double e3 = 0.05 * 0.05 * 0.05, e5 = e3 * 0.05 * 0.05;
  const double expansion = 4.0 * kPi / 3.0 * e3 + 4.0 * kPi / 45.0 * e5;
  CHECK(std::abs(res.norm_sq - expansion) < 1e-8);
}

TEST_CASE("solve_closed: norm/eps^3 decreases to the length term") {
  Curve c = make_ellipse(1.0, 0.8, 1024);
  const double lead = 2.0 / 3.0 * c.length;
  double prev = kInf;
  for (double eps : {0.08, 0.04, 0.02}) {
    const auto [field, res] = solve_closed(c, eps);
    const double ratio = res.norm_sq / (eps * eps * eps);
    CHECK(ratio > lead);
    CHECK(ratio < prev);
    prev = ratio;
  }
  CHECK(prev == Catch::Approx(lead).epsilon(2e-3));
}

TEST_CASE("mapped functional: parabolic background is exact for any curvature") {
  Curve c = make_ellipse(1.0, 0.6, 1024);
  const double eps = 0.05;
  ParamGrid g = make_closed_grid(c, eps, 256, 33);
  auto gp = std::make_shared<ParamGrid>(g);
  MappedField f;
  f.grid = gp;
  f.values.assign(static_cast<std::size_t>(g.cols()) * g.nt(), 0.0);
  for (int i = 0; i < g.cols(); ++i)
    for (int j = 1; j + 1 < g.nt(); ++j) f.at(i, j) = g.background(j);
  const double expect = 2.0 / 3.0 * eps * eps * eps * c.length;
  CHECK(mapped_functional(f) == Catch::Approx(expect).epsilon(1e-13));
}

TEST_CASE("mapped functional: zero field scores near zero") {
  Curve c = make_circle(1.0);
  const double eps = 0.1;
  ParamGrid g = make_closed_grid(c, eps, 256, 65);
  auto gp = std::make_shared<ParamGrid>(g);
  MappedField f;
  f.grid = gp;
  f.values.assign(static_cast<std::size_t>(g.cols()) * g.nt(), 0.0);
  const double scale = eps * eps * eps * c.length;
  CHECK(std::abs(mapped_functional(f)) < 1e-3 * scale);  // quadrature-level residue
}

TEST_CASE("mapped functional: solved field value matches the oracle") {
  Curve c = make_circle(1.0);
  const auto [field, res] = solve_closed(c, 0.1, 512, 65);
  CHECK(mapped_functional(field) ==
        Catch::Approx(annulus_norm_exact(1.0, 0.1)).epsilon(1e-4));
}

TEST_CASE("variational dominance: random admissible fields never beat the solve") {
  std::mt19937 rng(777);
  Curve c = perturbed_circle(rng);
  const double eps = 0.1;
  const auto [field, res] = solve_closed(c, eps, 256, 33);
  ParamGrid g = make_closed_grid(c, eps, 256, 33);
  for (int trial = 0; trial < 20; ++trial) {
    MappedField rf = random_admissible_field(g, rng);
    CHECK(mapped_functional(rf) <= res.norm_sq + 1e-9);
  }
}

TEST_CASE("scale covariance: norm(lambda curve, lambda eps) = lambda^4 norm") {
  Curve c = make_ellipse(1.0, 0.7, 1024);
  const double eps = 0.05;
  const auto [f0, r0] = solve_closed(c, eps, 256, 33);
  for (double lam : {0.5, 2.0}) {
    Curve s = c.scaled(lam);
    const auto [f1, r1] = solve_closed(s, lam * eps, 256, 33);
    CHECK(r1.norm_sq == Catch::Approx(std::pow(lam, 4) * r0.norm_sq).epsilon(1e-6));
  }
}

TEST_CASE("grid convergence: observed order >= 1.8 under doubling") {
  Curve c = make_ellipse(1.0, 0.6, 2048);
  const double eps = 0.05;
  const double n17 = solve_closed(c, eps, 512, 17).second.norm_sq;
  const double n33 = solve_closed(c, eps, 512, 33).second.norm_sq;
  const double n65 = solve_closed(c, eps, 512, 65).second.norm_sq;
  const double order = std::log2(std::abs(n17 - n33) / std::abs(n33 - n65));
  CHECK(order >= 1.8);
}

TEST_CASE("cg solver path agrees with the direct one") {
  Curve c = make_circle(1.0);
  const auto [fd, rd] = solve_closed(c, 0.1, 128, 17, SolveMethod::Direct);
  const auto [fc, rc] = solve_closed(c, 0.1, 128, 17, SolveMethod::ConjugateGradient);
  CHECK(rc.method == "cg");
  CHECK(rc.residual < 1e-10);
  CHECK(rc.norm_sq == Catch::Approx(rd.norm_sq).epsilon(1e-10));
}

TEST_CASE("solve_closed: guards") {
  Curve c = make_circle(1.0);
  CHECK_THROWS_AS(solve_closed(c, 0.96), TubeNotRegular);  // margin is 0.95 rho
  CHECK_THROWS_AS(solve_closed(c, 0.1, 32, 65), std::invalid_argument);
  CHECK_THROWS_AS(solve_closed(c, 0.1, 256, 16), std::invalid_argument);
}

TEST_CASE("solve_bulk_open: exactly straight strip is reproduced exactly") {
  // straight open curve flagged with eta: kappa == 0, reduced source vanishes
  const int n = 512;
  std::vector<Vec2> seg(n);
  for (int i = 0; i < n; ++i) seg[i] = {static_cast<double>(i) / (n - 1), 0.0};
  Curve c = resample_arclength(seg, n, CurveKind::Open, ResampleMode::Polygon, 0.2);
  const double eps = 0.03;
  const auto [field, contribution] = solve_bulk_open(c, eps, 256, 33);
  const double expect = 2.0 / 3.0 * eps * eps * eps * c.length * (1.0 - 2.0 * c.eta);
  CHECK(contribution == Catch::Approx(expect).epsilon(1e-13));
}

TEST_CASE("solve_bulk_open: cosine bump matches the bulk development") {
  Curve c = make_straight_ended_bump(0.4, 0.2, kPi / 4.0, 2048);
  const double eps = 0.05;
  const auto [field, contribution] = solve_bulk_open(c, eps, 512, 65);
  const double e3 = eps * eps * eps, e5 = e3 * eps * eps;
  const double lead = 2.0 / 3.0 * e3 * c.length * (1.0 - 2.0 * c.eta);
  const double curv_term = 2.0 / 45.0 * e5 * elastica_energy(c);
  CHECK(std::abs(contribution - lead - curv_term) < 0.03 * curv_term);
}

TEST_CASE("solve_bulk_open: defect against the expansion profile shrinks at order 5") {
  Curve c = make_straight_ended_bump(0.4, 0.2, kPi / 4.0, 2048);
  std::vector<double> defects;
  for (double eps : {0.04, 0.02, 0.01}) {
    const int nt = 2 * static_cast<int>(std::round(0.33 / eps)) + 1;
    const auto [field, contribution] = solve_bulk_open(c, eps, 0, nt);
    defects.push_back(defect_l2(field));
  }
  const double o1 = std::log2(defects[0] / defects[1]);
  const double o2 = std::log2(defects[1] / defects[2]);
  CHECK(o1 >= 4.5);
  CHECK(o2 >= 4.5);
}

TEST_CASE("solve_bulk_open: guards") {
  Curve circle = make_circle(1.0);
  CHECK_THROWS_AS(solve_bulk_open(circle, 0.05), std::invalid_argument);
  // open curve without validated straight ends
  const int n = 256;
  std::vector<Vec2> arc(n);
  for (int i = 0; i < n; ++i) {
    const double t = kPi * i / (n - 1);
    arc[i] = {std::cos(t), std::sin(t)};
  }
  Curve open_arc = resample_arclength(arc, n, CurveKind::Open, ResampleMode::Spline, 0.1);
  CHECK_THROWS_AS(solve_bulk_open(open_arc, 0.05), MissingEta);
}
