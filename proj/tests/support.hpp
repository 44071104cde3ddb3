#pragma once

// Shared fixtures for the unit and acceptance suites.

#include <random>

#include "tubenorm/asymptotics.hpp"
#include "tubenorm/mapped_solver.hpp"

namespace testsupport {

using namespace tubenorm;

inline Curve circle_at(double R, Vec2 center, int n = 512, double phase = 0.0) {
  std::vector<Vec2> pts(n);
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * kPi * i / n + phase;
    pts[i] = center + Vec2{R * std::cos(t), R * std::sin(t)};
  }
  return resample_arclength(pts, n, CurveKind::Closed);
}

// smooth random perturbed circle, admissible for eps up to ~0.4
inline Curve perturbed_circle(std::mt19937& rng, int n = 1024) {
  std::uniform_real_distribution<double> amp(-0.04, 0.04), ph(0.0, 2.0 * kPi);
  const double a2 = amp(rng), a3 = amp(rng), p2 = ph(rng), p3 = ph(rng);
  std::vector<Vec2> pts(n);
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * kPi * i / n;
    const double r = 1.0 + a2 * std::cos(2.0 * t + p2) + a3 * std::cos(3.0 * t + p3);
    pts[i] = {r * std::cos(t), r * std::sin(t)};
  }
  return resample_arclength(pts, n, CurveKind::Closed);
}

// random admissible field on a closed grid: vanishes at t = +-1
inline MappedField random_admissible_field(const ParamGrid& grid, std::mt19937& rng) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0), ph(0.0, 2.0 * kPi);
  std::uniform_int_distribution<int> kdist(1, 4), mdist(1, 3);
  auto gp = std::make_shared<ParamGrid>(grid);
  MappedField f;
  f.grid = gp;
  f.values.assign(static_cast<std::size_t>(grid.cols()) * grid.nt(), 0.0);
  const double scale = grid.eps * grid.eps;
  for (int mode = 0; mode < 3; ++mode) {
    const double a = coef(rng) * scale, phi = ph(rng);
    const int k = kdist(rng), m = mdist(rng);
    for (int i = 0; i < grid.cols(); ++i) {
      const double s = grid.s_at(i);
      for (int j = 1; j + 1 < grid.nt(); ++j)
        f.at(i, j) += a * std::sin(kPi * m * (grid.t[j] + 1.0) / 2.0) *
                      std::cos(2.0 * kPi * k * s + phi);
    }
  }
  return f;
}

// L2(ds dt) distance between a solved bulk field and the three-term expansion
// profile on the same grid
inline double defect_l2(const MappedField& f) {
  const ParamGrid& g = *f.grid;
  const double e3 = g.eps * g.eps * g.eps, e4 = e3 * g.eps;
  double acc = 0.0;
  for (int i = 0; i < g.cols(); ++i) {
    const double ws = (!g.periodic && (i == 0 || i == g.cols() - 1)) ? 0.5 : 1.0;
    const double k = g.kappa[i];
    for (int j = 0; j < g.nt(); ++j) {
      const double t = g.t[j];
      const double wt = (j == 0 || j == g.nt() - 1) ? 0.5 : 1.0;
      const double profile = g.background(j) + e3 / 6.0 * k * t * (1.0 - t * t) +
                             e4 / 24.0 * k * k * (-3.0 * t * t * t * t + 2.0 * t * t + 1.0);
      const double d = f.at(i, j) - profile;
      acc += ws * wt * d * d;
    }
  }
  return std::sqrt(acc * g.hs() * g.ht());
}

}  // namespace testsupport
