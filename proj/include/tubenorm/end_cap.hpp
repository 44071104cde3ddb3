#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <array>
#include <random>

#include "tubenorm/common.hpp"

namespace tubenorm {

inline constexpr const char* kEndCapVersion = "end_cap/1";

// ---------------------------------------------------------------------------
// Capped half-strip (-L,0)x(-1,1) united with the unit half-disc, triangulated
// ---------------------------------------------------------------------------

enum class CapBoundary : std::uint8_t { Interior = 0, StripSide, Truncation, CapArc };

struct CapDomain {
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> tris;
  std::vector<CapBoundary> tag;
  double L = 0.0;
  double h = 0.0;   // requested mesh size (max element diameter)
  double hr = 0.0;  // realized grid spacing

  double area() const {
    double a = 0.0;
    for (const auto& tr : tris) {
      const Vec2 e1 = nodes[tr[1]] - nodes[tr[0]];
      const Vec2 e2 = nodes[tr[2]] - nodes[tr[0]];
      a += 0.5 * std::abs(e1.cross(e2));
    }
    return a;
  }
  double max_element_diameter() const {
    double d = 0.0;
    for (const auto& tr : tris)
      for (int k = 0; k < 3; ++k)
        d = std::max(d, (nodes[tr[k]] - nodes[tr[(k + 1) % 3]]).norm());
    return d;
  }
};

inline CapDomain build_cap_domain(double L, double h) {
  if (!(L >= 2.0) || !(h <= 0.1) || !(h > 0))
    throw MeshFailure("build_cap_domain: need L >= 2 and 0 < h <= 0.1");
  CapDomain dom;
  dom.L = L;
  dom.h = h;
  // spacing such that split-rectangle diagonals stay within h
  const int Nr = static_cast<int>(std::ceil(std::sqrt(2.0) / h));
  const double hr = 1.0 / Nr;
  dom.hr = hr;
  const int Nx = static_cast<int>(std::ceil(L / hr));
  const double hx = L / Nx;
  const int M = static_cast<int>(std::ceil(kPi / hr));  // angular subdivisions

  auto add_node = [&](Vec2 p, CapBoundary b) {
    dom.nodes.push_back(p);
    dom.tag.push_back(b);
    return static_cast<int>(dom.nodes.size()) - 1;
  };

  // strip: columns i = 0..Nx (x = -L..0), rows j = 0..2Nr (y = -1..1)
  std::vector<int> strip(static_cast<std::size_t>(Nx + 1) * (2 * Nr + 1));
  auto sid = [&](int i, int j) -> int& {
    return strip[static_cast<std::size_t>(i) * (2 * Nr + 1) + j];
  };
  for (int i = 0; i <= Nx; ++i) {
    const double x = -L + i * hx;
    for (int j = 0; j <= 2 * Nr; ++j) {
      CapBoundary b = CapBoundary::Interior;
      if (j == 0 || j == 2 * Nr) b = CapBoundary::StripSide;
      if (i == 0) b = (j == 0 || j == 2 * Nr) ? CapBoundary::StripSide : CapBoundary::Truncation;
      sid(i, j) = add_node({x, -1.0 + j * hr}, b);
    }
  }
  for (int i = 0; i < Nx; ++i)
    for (int j = 0; j < 2 * Nr; ++j) {
      const int a = sid(i, j), b = sid(i + 1, j), c = sid(i + 1, j + 1), d = sid(i, j + 1);
      dom.tris.push_back({a, b, c});
      dom.tris.push_back({a, c, d});
    }

  // cap: concentric rings r = k hr sharing the strip's right-edge nodes at
  // theta = +-pi/2; all rings carry the same angular count for conformity
  std::vector<std::vector<int>> ring(Nr + 1);
  ring[0] = {sid(Nx, Nr)};  // center (0,0)
  for (int k = 1; k <= Nr; ++k) {
    ring[k].resize(M + 1);
    const double r = k * hr;
    for (int m = 0; m <= M; ++m) {
      if (m == 0) {
        ring[k][m] = sid(Nx, Nr - k);
      } else if (m == M) {
        ring[k][m] = sid(Nx, Nr + k);
      } else {
        const double th = -kPi / 2.0 + kPi * m / M;
        const CapBoundary b = (k == Nr) ? CapBoundary::CapArc : CapBoundary::Interior;
        ring[k][m] = add_node({r * std::cos(th), r * std::sin(th)}, b);
      }
    }
  }
  for (int m = 0; m < M; ++m) dom.tris.push_back({ring[0][0], ring[1][m], ring[1][m + 1]});
  for (int k = 1; k < Nr; ++k)
    for (int m = 0; m < M; ++m) {
      const int a = ring[k][m], b = ring[k][m + 1];
      const int c = ring[k + 1][m], d = ring[k + 1][m + 1];
      dom.tris.push_back({a, c, d});
      dom.tris.push_back({a, d, b});
    }
  return dom;
}

// ---------------------------------------------------------------------------
// Harmonic cap solve: -Lap psi = 0, psi = -(1-y^2)/2 on the cap arc, 0 on the
// strip sides and the truncation
// ---------------------------------------------------------------------------

struct CapSolution {
  CapDomain domain;
  std::vector<double> psi;
  double integral_psi = 0.0;
  double alpha_estimate = 0.0;  // integral + 3 pi / 16
  double h = 0.0, L = 0.0;
};

inline CapSolution solve_cap_psi(CapDomain domain) {
  const int n = static_cast<int>(domain.nodes.size());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(domain.tris.size()) * 9);
  for (const auto& tr : domain.tris) {
    const Vec2 p0 = domain.nodes[tr[0]], p1 = domain.nodes[tr[1]], p2 = domain.nodes[tr[2]];
    const double det = (p1 - p0).cross(p2 - p0);
    const double area = 0.5 * std::abs(det);
    if (!(area > 0)) throw MeshFailure("degenerate triangle");
    const double bb[3] = {p1.y - p2.y, p2.y - p0.y, p0.y - p1.y};
    const double cc[3] = {p2.x - p1.x, p0.x - p2.x, p1.x - p0.x};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        trip.emplace_back(tr[a], tr[b], (bb[a] * bb[b] + cc[a] * cc[b]) / (4.0 * area));
  }
  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(trip.begin(), trip.end());

  std::vector<double> psi(n, 0.0);
  std::vector<int> free_of(n, -1);
  int nfree = 0;
  for (int i = 0; i < n; ++i) {
    if (domain.tag[i] == CapBoundary::Interior) {
      free_of[i] = nfree++;
    } else if (domain.tag[i] == CapBoundary::CapArc) {
      psi[i] = -(1.0 - domain.nodes[i].y * domain.nodes[i].y) / 2.0;
    }
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nfree);
  std::vector<Eigen::Triplet<double>> tf;
  for (int k = 0; k < A.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, k); it; ++it) {
      const int r = static_cast<int>(it.row()), c = static_cast<int>(it.col());
      if (free_of[r] < 0) continue;
      if (free_of[c] >= 0)
        tf.emplace_back(free_of[r], free_of[c], it.value());
      else if (psi[c] != 0.0)
        rhs[free_of[r]] -= it.value() * psi[c];
    }
  Eigen::SparseMatrix<double> Af(nfree, nfree);
  Af.setFromTriplets(tf.begin(), tf.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(Af);
  if (solver.info() != Eigen::Success) throw SingularSystem("cap stiffness factorization failed");
  Eigen::VectorXd x = solver.solve(rhs);
  if (solver.info() != Eigen::Success) throw SingularSystem("cap solve failed");
  for (int i = 0; i < n; ++i)
    if (free_of[i] >= 0) psi[i] = x[free_of[i]];

  CapSolution sol;
  sol.integral_psi = 0.0;
  for (const auto& tr : domain.tris) {
    const Vec2 p0 = domain.nodes[tr[0]], p1 = domain.nodes[tr[1]], p2 = domain.nodes[tr[2]];
    const double area = 0.5 * std::abs((p1 - p0).cross(p2 - p0));
    sol.integral_psi += area * (psi[tr[0]] + psi[tr[1]] + psi[tr[2]]) / 3.0;
  }
  sol.alpha_estimate = sol.integral_psi + 3.0 * kPi / 16.0;
  sol.h = domain.h;
  sol.L = domain.L;
  sol.psi = std::move(psi);
  sol.domain = std::move(domain);
  return sol;
}

// ---------------------------------------------------------------------------
// The universal end-cap coefficient with an error budget
// ---------------------------------------------------------------------------

struct AlphaResult {
  double alpha = 0.0;
  double error_budget = 0.0;
  double alpha_coarse = 0.0, alpha_fine = 0.0;
  double h = 0.0, L = 0.0;
};

inline AlphaResult alpha_constant(double h, double L) {
  const CapSolution coarse = solve_cap_psi(build_cap_domain(L, h));
  const CapSolution fine = solve_cap_psi(build_cap_domain(L, h / 2.0));
  AlphaResult r;
  r.alpha_coarse = coarse.alpha_estimate;
  r.alpha_fine = fine.alpha_estimate;
  r.alpha = (4.0 * fine.alpha_estimate - coarse.alpha_estimate) / 3.0;  // order-2 Richardson
  r.error_budget = std::abs(fine.alpha_estimate - coarse.alpha_estimate) / 3.0 +
                   4.0 * std::exp(-L);  // mesh estimate + strip truncation
  r.h = h;
  r.L = L;
  return r;
}

// ---------------------------------------------------------------------------
// Exponential decay of psi into the strip, checked at integer stations
// ---------------------------------------------------------------------------

struct DecayStation {
  double x = 0.0;
  double max_abs_psi = 0.0;
  double bound = 0.0;  // 4 e^{-|x|}
  double margin = 0.0;
};

inline std::vector<DecayStation> decay_check(const CapSolution& sol) {
  std::vector<DecayStation> out;
  const double half_col = 0.51 * sol.domain.hr;
  for (int k = 1; k <= static_cast<int>(sol.L) - 1; ++k) {
    const double x = -static_cast<double>(k);
    DecayStation st;
    st.x = x;
    for (std::size_t i = 0; i < sol.domain.nodes.size(); ++i)
      if (std::abs(sol.domain.nodes[i].x - x) < half_col)
        st.max_abs_psi = std::max(st.max_abs_psi, std::abs(sol.psi[i]));
    st.bound = 4.0 * std::exp(-std::abs(x));
    st.margin = st.bound - st.max_abs_psi;
    out.push_back(st);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Harmonic comparison function: explicit cosine-mode sum whose integral over
// the capped strip certifies positivity of the end-cap coefficient
// ---------------------------------------------------------------------------

namespace detail {

struct CapMode {
  double coef, k;
};
inline constexpr std::array<CapMode, 4> kCapModes = {{
    {-0.112, kPi / 2.0},
    {0.0019, 3.0 * kPi / 2.0},
    {-0.00008, 5.0 * kPi / 2.0},
    {-0.056, 1.0},
}};

}  // namespace detail

inline double comparison_psi(double x, double y) {
  double v = 0.0;
  for (const auto& m : detail::kCapModes) v += m.coef * std::exp(m.k * x) * std::cos(m.k * y);
  return v;
}

struct ComparisonResult {
  double integral_tilde_psi = 0.0;
  double combined = 0.0;  // 3 pi / 16 + integral
  bool positive = false;
  double max_laplacian = 0.0;  // |Lap psi~| over random interior points
};

inline ComparisonResult comparison_bound(unsigned seed = 20240901u) {
  ComparisonResult res;
  double total = 0.0;
  const int nq = 20001;  // Simpson nodes, phi = asin(y) substitution
  for (const auto& m : detail::kCapModes) {
    total += m.coef * 2.0 * std::sin(m.k) / (m.k * m.k);  // strip part, closed form in x
    std::vector<double> f(nq);
    for (int i = 0; i < nq; ++i) {
      const double phi = -kPi / 2.0 + kPi * i / (nq - 1);
      const double y = std::sin(phi), c = std::cos(phi);
      f[i] = (std::exp(m.k * c) - 1.0) / m.k * std::cos(m.k * y) * c;
    }
    total += m.coef * simpson(f, kPi / (nq - 1));  // half-disc part
  }
  res.integral_tilde_psi = total;
  res.combined = 3.0 * kPi / 16.0 + total;
  res.positive = res.combined > 0.0;

  // harmonicity spot-check: second derivatives summed mode-by-mode
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> ux(-6.0, 1.0), uy(-1.0, 1.0);
  for (int it = 0; it < 100; ++it) {
    double x, y;
    do {
      x = ux(rng);
      y = uy(rng);
    } while (!(x < 0 ? std::abs(y) < 1.0 : x * x + y * y < 1.0));
    double lap = 0.0;
    for (const auto& m : detail::kCapModes) {
      const double xx = m.coef * m.k * m.k * std::exp(m.k * x) * std::cos(m.k * y);
      const double yy = -m.coef * m.k * m.k * std::exp(m.k * x) * std::cos(m.k * y);
      lap += xx + yy;
    }
    res.max_laplacian = std::max(res.max_laplacian, std::abs(lap));
  }
  return res;
}

}  // namespace tubenorm
