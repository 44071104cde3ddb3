#include <catch2/catch_amalgamated.hpp>

#include "tubenorm/systems.hpp"

using namespace tubenorm;

namespace {

Curve circle_at(double R, Vec2 center, int n = 512, double phase = 0.0) {
  std::vector<Vec2> pts(n);
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * kPi * i / n + phase;
    pts[i] = center + Vec2{R * std::cos(t), R * std::sin(t)};
  }
  Curve c = resample_arclength(pts, n, CurveKind::Closed);
  return c;
}

Curve lemniscate(int n = 1024) {
  std::vector<Vec2> pts(n);
  for (int i = 0; i < n; ++i) {
    const double u = 2.0 * kPi * i / n;
    const double den = 1.0 + std::sin(u) * std::sin(u);
    pts[i] = {std::cos(u) / den, std::sin(u) * std::cos(u) / den};
  }
  return resample_arclength(pts, n, CurveKind::Closed);
}

double default_dist_tol(const CurveSystem& s) { return 2.0 * s.max_sample_spacing(); }

}  // namespace

TEST_CASE("system metrics: concentric circles") {
  CurveSystem sys({circle_at(1.0, {0, 0}), circle_at(2.0, {0, 0})});
  const auto [len, rho] = system_metrics(sys);
  CHECK(len == Catch::Approx(6.0 * kPi).epsilon(1e-6));
  CHECK(rho == Catch::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("system metrics: single circle") {
  CurveSystem sys({circle_at(1.7, {0.3, -0.2})});
  const auto [len, rho] = system_metrics(sys);
  CHECK(len == Catch::Approx(2.0 * kPi * 1.7).epsilon(1e-6));
  CHECK(rho == Catch::Approx(1.7).epsilon(1e-4));
}

TEST_CASE("system metrics: distant unit circles") {
  CurveSystem sys({circle_at(1.0, {0, 0}), circle_at(1.0, {4, 0})});
  const auto [len, rho] = system_metrics(sys);
  CHECK(len == Catch::Approx(4.0 * kPi).epsilon(1e-6));
  CHECK(rho == Catch::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("system metrics: additivity is exact") {
  const Curve a = circle_at(1.0, {0, 0}), b = circle_at(2.0, {5, 0}), c = circle_at(0.5, {-4, 0});
  CurveSystem sys({a, b, c});
  CHECK(sys.length() == a.length + b.length + c.length);  // fixed summation order
}

TEST_CASE("multiplicity: simple and doubled traces") {
  const Curve c = circle_at(1.0, {0, 0});
  CurveSystem simple({c});
  const double tol = default_dist_tol(simple);
  CHECK(multiplicity_at(simple, {1.0, 0.0}, tol) == 1);
  CHECK(multiplicity_at(simple, {0.5, 0.5}, tol) == 0);  // off the trace
  CurveSystem doubled({c, c});
  CHECK(multiplicity_at(doubled, {1.0, 0.0}, tol) == 2);
  CHECK(multiplicity_at(doubled, {std::cos(2.2), std::sin(2.2)}, tol) == 2);
}

TEST_CASE("crossings: figure-eight has one transverse node") {
  CurveSystem sys({lemniscate()});
  const auto reports = detect_transverse_crossings(sys, default_dist_tol(sys), 0.05);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].classification == CrossingClass::Transverse);
  CHECK(reports[0].angle == Catch::Approx(kPi / 2.0).margin(0.02));  // node angle
  CHECK(reports[0].location.norm() < 0.05);
  CHECK(has_transverse_crossing(sys));
}

TEST_CASE("crossings: tangent circles give one tangent report") {
  CurveSystem sys({circle_at(1.0, {0, 0}, 1024), circle_at(1.0, {2, 0}, 1024)});
  const auto reports = detect_transverse_crossings(sys, default_dist_tol(sys), 0.05);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].classification == CrossingClass::Tangent);
  CHECK((reports[0].location - Vec2{1.0, 0.0}).norm() < 0.05);
  CHECK(!has_transverse_crossing(sys));
}

TEST_CASE("crossings: internally tangent circles classified tangent") {
  CurveSystem sys({circle_at(1.0, {0, 0}, 1024), circle_at(2.0, {-1, 0}, 2048)});
  const auto reports = detect_transverse_crossings(sys, default_dist_tol(sys), 0.05);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].classification == CrossingClass::Tangent);
  CHECK((reports[0].location - Vec2{1.0, 0.0}).norm() < 0.05);
}

TEST_CASE("crossings: disjoint circles give none") {
  CurveSystem sys({circle_at(1.0, {0, 0}), circle_at(1.0, {4, 0})});
  CHECK(detect_transverse_crossings(sys, default_dist_tol(sys), 0.05).empty());
}

TEST_CASE("crossings: report set symmetric under curve permutation") {
  const Curve a = lemniscate(), b = circle_at(0.2, {3, 0});
  CurveSystem s1({a, b}), s2({b, a});
  const auto r1 = detect_transverse_crossings(s1, default_dist_tol(s1), 0.05);
  const auto r2 = detect_transverse_crossings(s2, default_dist_tol(s2), 0.05);
  REQUIRE(r1.size() == r2.size());
  for (std::size_t i = 0; i < r1.size(); ++i) {
    CHECK((r1[i].location - r2[i].location).norm() < 1e-9);
    CHECK(r1[i].classification == r2[i].classification);
  }
}

TEST_CASE("equivalence: phase offset of the same circle") {
  CurveSystem a({circle_at(1.0, {0, 0}, 512, 0.0)});
  CurveSystem b({circle_at(1.0, {0, 0}, 512, 0.77)});
  CHECK(systems_equivalent(a, b, 0.05));
}

TEST_CASE("equivalence: doubled circle vs two coincident circles") {
  const Curve c = circle_at(1.0, {0, 0});
  // one curve traversing the trace twice
  const int n = c.n();
  std::vector<Vec2> twice(2 * n);
  for (int i = 0; i < 2 * n; ++i) {
    const double t = 4.0 * kPi * i / (2 * n);
    twice[i] = {std::cos(t), std::sin(t)};
  }
  Curve doubled;
  doubled.pts = twice;
  doubled.kind = CurveKind::Closed;
  doubled.length = 4.0 * kPi;
  doubled.rho = 0.0;  // coincident passes sit under the resolution floor
  CurveSystem A({doubled});
  CurveSystem B({c, c});
  CHECK(systems_equivalent(A, B, 0.05));
  // multiplicity agrees on shared trace points
  const double tol = 2.0 * std::max(A.max_sample_spacing(), B.max_sample_spacing());
  CHECK(multiplicity_at(A, {1.0, 0.0}, tol) == multiplicity_at(B, {1.0, 0.0}, tol));
}

TEST_CASE("equivalence: distinct radii differ") {
  CurveSystem a({circle_at(1.0, {0, 0})});
  CurveSystem b({circle_at(1.05, {0, 0})});
  CHECK(!systems_equivalent(a, b, 0.01));
}
