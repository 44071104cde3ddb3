#pragma once

#include <algorithm>
#include <array>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <vector>

#include "tubenorm/common.hpp"

namespace tubenorm {

inline constexpr const char* kGeometryVersion = "curve_geometry/1";

enum class CurveKind { Closed, Open };
enum class ResampleMode { Spline, Polygon };

// ---------------------------------------------------------------------------
// Cubic splines through planar points (periodic for closed curves, clamped
// with finite-difference end slopes for open ones).
// ---------------------------------------------------------------------------

class CubicSpline2 {
 public:
  // knots strictly increasing; for periodic splines the last point must NOT
  // repeat the first; `period` is the parameter length of the closing segment's end.
  CubicSpline2(std::vector<double> knots, std::vector<Vec2> pts, bool periodic)
      : u_(std::move(knots)), p_(std::move(pts)), periodic_(periodic) {
    const std::size_t n = p_.size();
    if (n < 3) throw TooFewPoints("spline needs at least 3 points");
    if (u_.size() != n + (periodic_ ? 1 : 0))
      throw std::invalid_argument("spline: knot/point count mismatch");
    mx_ = second_derivatives([](Vec2 v) { return v.x; });
    my_ = second_derivatives([](Vec2 v) { return v.y; });
  }

  double param_begin() const { return u_.front(); }
  double param_end() const { return u_.back(); }

  Vec2 eval(double u) const {
    const auto [i, h, a, b] = locate(u);
    auto comp = [&](double y0, double y1, double m0, double m1) {
      return a * y0 + b * y1 +
             ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / 6.0;
    };
    const Vec2 p0 = point(i), p1 = point(i + 1);
    return {comp(p0.x, p1.x, mx_[i], mx_[wrap(i + 1)]),
            comp(p0.y, p1.y, my_[i], my_[wrap(i + 1)])};
  }

  Vec2 derivative(double u) const {
    const auto [i, h, a, b] = locate(u);
    auto comp = [&](double y0, double y1, double m0, double m1) {
      return (y1 - y0) / h - (3.0 * a * a - 1.0) * h * m0 / 6.0 +
             (3.0 * b * b - 1.0) * h * m1 / 6.0;
    };
    const Vec2 p0 = point(i), p1 = point(i + 1);
    return {comp(p0.x, p1.x, mx_[i], mx_[wrap(i + 1)]),
            comp(p0.y, p1.y, my_[i], my_[wrap(i + 1)])};
  }

  // Arclength of the parameter interval [ua, ub] by 5-point Gauss per overlap
  // with each polynomial segment.
  double arclength(double ua, double ub) const {
    static constexpr std::array<double, 5> gx = {
        -0.9061798459386640, -0.5384693101056831, 0.0,
        0.5384693101056831, 0.9061798459386640};
    static constexpr std::array<double, 5> gw = {
        0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
        0.4786286704993665, 0.2369268850561891};
    double total = 0.0;
    std::size_t i = segment_index(ua);
    double lo = ua;
    while (lo < ub - 1e-15) {
      const double hi = std::min(ub, u_[i + 1]);
      const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
      double seg = 0.0;
      for (int q = 0; q < 5; ++q) seg += gw[q] * derivative(mid + half * gx[q]).norm();
      total += seg * half;
      lo = hi;
      ++i;
      if (i + 1 >= u_.size()) break;
    }
    return total;
  }

 private:
  std::vector<double> u_;
  std::vector<Vec2> p_;
  bool periodic_;
  std::vector<double> mx_, my_;

  std::size_t wrap(std::size_t i) const { return periodic_ && i == p_.size() ? 0 : i; }
  Vec2 point(std::size_t i) const { return p_[wrap(i)]; }

  std::size_t segment_index(double u) const {
    auto it = std::upper_bound(u_.begin(), u_.end(), u);
    std::size_t i = static_cast<std::size_t>(std::distance(u_.begin(), it));
    if (i > 0) --i;
    return std::min(i, u_.size() - 2);
  }

  struct Loc { std::size_t i; double h, a, b; };
  Loc locate(double u) const {
    const std::size_t i = segment_index(u);
    const double h = u_[i + 1] - u_[i];
    const double b = std::clamp((u - u_[i]) / h, 0.0, 1.0);
    return {i, h, 1.0 - b, b};
  }

  std::vector<double> second_derivatives(const std::function<double(Vec2)>& get) const {
    const std::size_t n = p_.size();
    if (periodic_) {
      // unknowns M_0..M_{n-1}, M_n == M_0
      std::vector<double> a(n), b(n), c(n), d(n);
      auto h = [&](std::size_t i) { return u_[i + 1] - u_[i]; };  // i in [0, n)
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t im = (i + n - 1) % n;
        const double hi = h(i), him = h(im);
        a[i] = him / 6.0;
        b[i] = (him + hi) / 3.0;
        c[i] = hi / 6.0;
        const double y0 = get(p_[im]), y1 = get(p_[i]), y2 = get(p_[(i + 1) % n]);
        d[i] = (y2 - y1) / hi - (y1 - y0) / him;
      }
      return solve_cyclic_tridiagonal(a, b, c, d);
    }
    // clamped: end slopes from one-sided 3-point differences
    std::vector<double> a(n), b(n), c(n), d(n);
    auto h = [&](std::size_t i) { return u_[i + 1] - u_[i]; };
    auto slope3 = [&](std::size_t i0, std::size_t i1, std::size_t i2, bool fwd) {
      const double h0 = u_[i1] - u_[i0], h1 = u_[i2] - u_[i1];
      const double s0 = (get(p_[i1]) - get(p_[i0])) / h0;
      const double s1 = (get(p_[i2]) - get(p_[i1])) / h1;
      return fwd ? s0 - h0 * (s1 - s0) / (h0 + h1) : s1 + h1 * (s1 - s0) / (h0 + h1);
    };
    const double d0 = slope3(0, 1, 2, true);
    const double dn = slope3(n - 3, n - 2, n - 1, false);
    b[0] = h(0) / 3.0;
    c[0] = h(0) / 6.0;
    d[0] = (get(p_[1]) - get(p_[0])) / h(0) - d0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      a[i] = h(i - 1) / 6.0;
      b[i] = (h(i - 1) + h(i)) / 3.0;
      c[i] = h(i) / 6.0;
      d[i] = (get(p_[i + 1]) - get(p_[i])) / h(i) - (get(p_[i]) - get(p_[i - 1])) / h(i - 1);
    }
    a[n - 1] = h(n - 2) / 6.0;
    b[n - 1] = h(n - 2) / 3.0;
    d[n - 1] = dn - (get(p_[n - 1]) - get(p_[n - 2])) / h(n - 2);
    return solve_tridiagonal(a, b, c, d);
  }
};

// ---------------------------------------------------------------------------
// Curve: plane curve sampled uniformly in a parameter proportional to arclength
// ---------------------------------------------------------------------------

struct Curve {
  std::vector<Vec2> pts;  // closed: N samples, wrap; open: N samples incl. endpoints
  CurveKind kind = CurveKind::Closed;
  double length = 0.0;
  double eta = 0.0;          // straight-end parameter band (open curves), 0 if unset
  bool reoriented = false;   // clockwise input flipped to the counterclockwise convention
  double rho = kInf;         // global radius of curvature (0 => self-intersecting)

  int n() const { return static_cast<int>(pts.size()); }
  // parameter spacing
  double h() const {
    return kind == CurveKind::Closed ? 1.0 / n() : 1.0 / (n() - 1);
  }
  bool closed() const { return kind == CurveKind::Closed; }

  Vec2 at(int i) const {
    const int N = n();
    if (kind == CurveKind::Closed) return pts[((i % N) + N) % N];
    return pts[std::clamp(i, 0, N - 1)];
  }

  Curve scaled(double lambda) const {
    Curve c = *this;
    for (auto& p : c.pts) p = p * lambda;
    c.length *= lambda;
    c.rho = (rho == kInf) ? kInf : rho * lambda;
    return c;
  }
};

struct FrameSample {
  double s = 0.0;
  Vec2 tangent;   // unit
  Vec2 normal;    // unit, anticlockwise rotation of tangent
  double kappa = 0.0;
};

namespace detail {

// Second parameter derivative by centered differences (one-sided 2nd order at
// open endpoints).
inline Vec2 second_difference(const Curve& c, int i) {
  const double h2 = c.h() * c.h();
  const int N = c.n();
  if (c.closed() || (i > 0 && i < N - 1))
    return (c.at(i + 1) - c.at(i) * 2.0 + c.at(i - 1)) / h2;
  if (i == 0)
    return (c.at(0) * 2.0 - c.at(1) * 5.0 + c.at(2) * 4.0 - c.at(3)) / h2;
  return (c.at(N - 1) * 2.0 - c.at(N - 2) * 5.0 + c.at(N - 3) * 4.0 - c.at(N - 4)) / h2;
}

inline Vec2 first_difference(const Curve& c, int i) {
  const double h = c.h();
  const int N = c.n();
  if (c.closed() || (i > 0 && i < N - 1)) return (c.at(i + 1) - c.at(i - 1)) / (2.0 * h);
  if (i == 0) return (c.at(0) * -3.0 + c.at(1) * 4.0 - c.at(2)) / (2.0 * h);
  return (c.at(N - 1) * 3.0 - c.at(N - 2) * 4.0 + c.at(N - 3)) / (2.0 * h);
}

inline double polygon_signed_area(const std::vector<Vec2>& p) {
  double a = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) a += p[i].cross(p[(i + 1) % p.size()]);
  return 0.5 * a;
}

// Global radius of curvature: min of local osculating radii and pairwise
// point-tangent radii r = |y-x|^2 / (2 |T(x) x (y-x)|).  O(N^2) with an
// early-out on chord length.  Returns 0 if a pair falls under the resolution
// floor (self-intersection at sampling scale).
inline double global_radius_samples(const Curve& c) {
  const int N = c.n();
  double best = kInf;
  // local part
  for (int i = 0; i < N; ++i) {
    const Vec2 d1 = first_difference(c, i);
    const Vec2 d2 = second_difference(c, i);
    const double sp2 = d1.squared_norm();
    const double k = std::abs(d1.cross(d2)) / (sp2 * std::sqrt(sp2));
    if (k > 0) best = std::min(best, 1.0 / k);
  }
  const double floor_r = 2.0 * c.length * c.h();
  const int adj = 3;  // skip parameter-adjacent pairs; local term covers them
  for (int i = 0; i < N; ++i) {
    const Vec2 x = c.at(i);
    const Vec2 t = first_difference(c, i).normalized();
    const int jmax = c.closed() ? i + N - adj : N - 1;
    for (int j = (c.closed() ? i + adj : i + adj); j <= jmax; ++j) {
      if (!c.closed() && j >= N) break;
      const Vec2 d = c.at(j) - x;
      const double dd = d.squared_norm();
      if (dd > 4.0 * best * best) continue;  // r >= |d|/2
      const double cr = std::abs(t.cross(d));
      const double r = cr > 0 ? dd / (2.0 * cr) : kInf;
      if (r < best) best = r;
      if (best < floor_r) return 0.0;
    }
  }
  return best;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

inline std::vector<FrameSample> curvature_profile(const Curve& curve) {
  const int N = curve.n();
  if (N < 16) throw TooFewPoints("curvature_profile: N >= 16 required");
  const double ell2 = curve.length * curve.length;
  std::vector<FrameSample> out(N);
  for (int i = 0; i < N; ++i) {
    FrameSample f;
    f.s = i * curve.h();
    f.tangent = detail::first_difference(curve, i).normalized();
    f.normal = f.tangent.rot90();
    f.kappa = detail::second_difference(curve, i).dot(f.normal) / ell2;
    out[i] = f;
  }
  return out;
}

inline std::vector<double> curvature_values(const Curve& curve) {
  auto fr = curvature_profile(curve);
  std::vector<double> k(fr.size());
  for (std::size_t i = 0; i < fr.size(); ++i) k[i] = fr[i].kappa;
  return k;
}

// Integral of squared curvature along the curve, l(g) * int_T kappa^2 ds.
inline double elastica_energy(const Curve& curve) {
  const auto k = curvature_values(curve);
  std::vector<double> k2(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) k2[i] = k[i] * k[i];
  const double param_integral = curve.closed()
                                    ? periodic_integral(k2)
                                    : trapezoid(k2, curve.h());
  return curve.length * param_integral;
}

inline double global_radius(const Curve& curve) {
  const double rho = std::isnan(curve.rho) ? detail::global_radius_samples(curve) : curve.rho;
  if (rho <= 0.0)
    throw SelfIntersecting("global_radius: pairwise radius under resolution floor");
  return rho;
}

// Tube chart: point = gamma(s) + eps t nu(s); jacobian = eps l (1 - eps t kappa).
struct TubePoint {
  Vec2 point;
  double jacobian_det = 0.0;
};

inline TubePoint tube_map(const Curve& curve, double eps, double s, double t) {
  if (!(eps > 0) || std::abs(t) > 1.0)
    throw std::invalid_argument("tube_map: eps > 0, |t| <= 1");
  if (eps > curve.rho) throw TubeNotRegular("tube_map: eps exceeds global radius");
  const int N = curve.n();
  const double u = curve.closed() ? s - std::floor(s) : std::clamp(s, 0.0, 1.0);
  const double x = u / curve.h();
  const int i = std::min(static_cast<int>(x), curve.closed() ? N - 1 : N - 2);
  const double f = x - i;
  const Vec2 g = curve.at(i) * (1.0 - f) + curve.at(i + 1) * f;
  auto frame_at = [&](int idx) {
    const Vec2 tg = detail::first_difference(curve, idx).normalized();
    const Vec2 nu = tg.rot90();
    const double kap =
        detail::second_difference(curve, idx).dot(nu) / (curve.length * curve.length);
    return std::pair<Vec2, double>(nu, kap);
  };
  const auto [nu0, k0] = frame_at(i);
  const auto [nu1, k1] = frame_at(i + 1);
  const Vec2 nu = (nu0 * (1.0 - f) + nu1 * f).normalized();
  const double kap = k0 * (1.0 - f) + k1 * f;
  TubePoint out;
  out.point = g + (eps * t) * nu;
  out.jacobian_det = eps * curve.length * (1.0 - eps * t * kap);
  return out;
}

// ---------------------------------------------------------------------------
// Resampling to the arclength-proportional convention
// ---------------------------------------------------------------------------

inline Curve resample_arclength(std::vector<Vec2> points, int N, CurveKind kind,
                                ResampleMode mode = ResampleMode::Spline,
                                double eta = 0.0, bool compute_rho = true) {
  if (points.size() < 4)
    throw TooFewPoints("resample_arclength: need at least 4 input points");
  if (N < 16) throw TooFewPoints("resample_arclength: target N >= 16");
  // drop consecutive duplicates (and a duplicated closing point)
  std::vector<Vec2> q;
  for (const auto& p : points) {
    if (q.empty() || (p - q.back()).norm() > 0) q.push_back(p);
  }
  if (kind == CurveKind::Closed && q.size() > 1 && (q.front() - q.back()).norm() == 0)
    q.pop_back();
  if (q.size() < 4) throw DegenerateInput("resample_arclength: points collapse");

  double poly_len = 0.0;
  for (std::size_t i = 0; i + 1 < q.size(); ++i) poly_len += (q[i + 1] - q[i]).norm();
  if (kind == CurveKind::Closed) poly_len += (q.front() - q.back()).norm();
  if (!(poly_len > 0)) throw DegenerateInput("resample_arclength: zero total length");

  const bool periodic = kind == CurveKind::Closed;

  auto resample_pass = [&](const std::vector<Vec2>& pts, int target) {
    // chord-length knots
    const std::size_t n = pts.size();
    std::vector<double> u(n + (periodic ? 1 : 0));
    u[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) u[i] = u[i - 1] + (pts[i] - pts[i - 1]).norm();
    if (periodic) u[n] = u[n - 1] + (pts[0] - pts[n - 1]).norm();

    std::optional<CubicSpline2> spline;
    auto eval = [&](double uu) -> Vec2 {
      if (mode == ResampleMode::Polygon) {
        auto it = std::upper_bound(u.begin(), u.end(), uu);
        std::size_t i = it == u.begin() ? 0 : static_cast<std::size_t>(it - u.begin()) - 1;
        i = std::min(i, u.size() - 2);
        const double f = (uu - u[i]) / (u[i + 1] - u[i]);
        const Vec2 a = pts[i], b = pts[(i + 1) % n];
        return a * (1.0 - f) + b * f;
      }
      return spline->eval(uu);
    };
    if (mode == ResampleMode::Spline) spline.emplace(u, pts, periodic);

    // dense arclength table
    const std::size_t M = std::max<std::size_t>(16 * n, 16 * static_cast<std::size_t>(target));
    std::vector<double> cum(M + 1, 0.0), uu(M + 1);
    const double u_end = periodic ? u[n] : u[n - 1];
    Vec2 prev = eval(0.0);
    uu[0] = 0.0;
    for (std::size_t m = 1; m <= M; ++m) {
      uu[m] = u_end * static_cast<double>(m) / static_cast<double>(M);
      const Vec2 cur = eval(uu[m]);
      cum[m] = cum[m - 1] + (cur - prev).norm();
      prev = cur;
    }
    const double L = cum[M];
    const int count = periodic ? target : target;
    std::vector<Vec2> out(count);
    for (int k = 0; k < count; ++k) {
      const double sk = periodic ? L * k / count : L * k / (count - 1);
      auto it = std::lower_bound(cum.begin(), cum.end(), sk);
      std::size_t m = it == cum.begin() ? 0 : static_cast<std::size_t>(it - cum.begin()) - 1;
      m = std::min(m, M - 1);
      const double seg = cum[m + 1] - cum[m];
      const double f = seg > 0 ? (sk - cum[m]) / seg : 0.0;
      out[k] = eval(uu[m] * (1.0 - f) + uu[m + 1] * f);
    }
    return std::pair<std::vector<Vec2>, double>(out, L);
  };

  auto [mid, L1] = resample_pass(q, N);
  auto [fin, L2] = resample_pass(mid, N);

  Curve c;
  c.pts = std::move(fin);
  c.kind = kind;
  c.length = L2;
  c.eta = eta;
  if (kind == CurveKind::Closed && detail::polygon_signed_area(c.pts) < 0) {
    std::reverse(c.pts.begin(), c.pts.end());
    c.reoriented = true;
  }
  c.rho = compute_rho ? detail::global_radius_samples(c)
                      : std::numeric_limits<double>::quiet_NaN();
  return c;
}

// True spline arclength of every inter-sample gap; used to check the
// arclength-proportional invariant (relative tolerance on each gap).
inline double max_speed_deviation(const Curve& c) {
  const std::size_t n = c.pts.size();
  const bool periodic = c.closed();
  std::vector<double> u(n + (periodic ? 1 : 0));
  u[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i) u[i] = u[i - 1] + (c.pts[i] - c.pts[i - 1]).norm();
  if (periodic) u[n] = u[n - 1] + (c.pts[0] - c.pts[n - 1]).norm();
  CubicSpline2 sp(u, c.pts, periodic);
  const std::size_t gaps = periodic ? n : n - 1;
  const double expect = c.length / static_cast<double>(gaps);
  double worst = 0.0;
  for (std::size_t i = 0; i < gaps; ++i) {
    const double len = sp.arclength(u[i], u[i + 1]);
    worst = std::max(worst, std::abs(len / expect - 1.0));
  }
  return worst;
}

// |gamma''| smallness on the end bands [0,2eta] and [1-2eta,1].  Stencils
// touching the band-to-bump joint are excluded (they straddle the kink in
// the third derivative).
inline bool has_straight_ends(const Curve& c, double tol_factor = 1e-8) {
  if (c.closed() || c.eta <= 0) return false;
  const double tol = tol_factor * c.length * c.length;
  const int N = c.n();
  for (int i = 0; i < N; ++i) {
    const double s = i * c.h();
    const bool in_band =
        s < 2.0 * c.eta - 2.0 * c.h() || s > 1.0 - 2.0 * c.eta + 2.0 * c.h();
    if (in_band && detail::second_difference(c, i).norm() > tol) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

inline Curve make_circle(double R, int N = 2048) {
  if (!(R > 0)) throw DegenerateInput("circle: R > 0");
  Curve c;
  c.kind = CurveKind::Closed;
  c.length = 2.0 * kPi * R;
  c.pts.resize(N);
  for (int i = 0; i < N; ++i) {
    const double a = 2.0 * kPi * i / N;
    c.pts[i] = {R * std::cos(a), R * std::sin(a)};
  }
  c.rho = detail::global_radius_samples(c);
  return c;
}

inline Curve make_ellipse(double a, double b, int N = 2048, bool compute_rho = true) {
  if (!(a > 0) || !(b > 0)) throw DegenerateInput("ellipse: positive semi-axes");
  const int M = std::max(8 * N, 8192);
  std::vector<Vec2> dense(M);
  for (int i = 0; i < M; ++i) {
    const double th = 2.0 * kPi * i / M;
    dense[i] = {a * std::cos(th), b * std::sin(th)};
  }
  return resample_arclength(dense, N, CurveKind::Closed, ResampleMode::Spline, 0.0,
                            compute_rho);
}

// Open curve: two straight segments joined by a bump whose curvature is a
// cosine profile kappa(sigma) = A (1 - cos(2 pi (sigma-s0)/w))/2 turning the
// tangent by `turn_angle` over bump arclength `bump_len`.
inline Curve make_straight_ended_bump(double straight_len, double bump_len,
                                      double turn_angle, int N = 2048) {
  if (!(straight_len > 0) || !(bump_len > 0))
    throw DegenerateInput("straight_ended_bump: positive lengths");
  const double L = 2.0 * straight_len + bump_len;
  const double A = 2.0 * turn_angle / bump_len;
  auto theta_of = [&](double sig) {
    if (sig <= straight_len) return 0.0;
    const double x = std::min(sig, straight_len + bump_len) - straight_len;
    return A / 2.0 * (x - bump_len / (2.0 * kPi) * std::sin(2.0 * kPi * x / bump_len));
  };
  // integrate positions at fine resolution, then take every K-th sample
  const int K = 16;
  const int M = K * (N - 1);
  std::vector<Vec2> fine(M + 1);
  fine[0] = {0, 0};
  const double ds = L / M;
  for (int m = 1; m <= M; ++m) {
    // Simpson step for the tangent integral
    const double s0 = (m - 1) * ds, s1 = m * ds, sm = 0.5 * (s0 + s1);
    const Vec2 t0{std::cos(theta_of(s0)), std::sin(theta_of(s0))};
    const Vec2 tm{std::cos(theta_of(sm)), std::sin(theta_of(sm))};
    const Vec2 t1{std::cos(theta_of(s1)), std::sin(theta_of(s1))};
    fine[m] = fine[m - 1] + (t0 + tm * 4.0 + t1) * (ds / 6.0);
  }
  Curve c;
  c.kind = CurveKind::Open;
  c.length = L;
  c.eta = straight_len / (2.0 * L);
  c.pts.resize(N);
  for (int i = 0; i < N; ++i) c.pts[i] = fine[i * K];
  c.rho = detail::global_radius_samples(c);
  return c;
}

// ---------------------------------------------------------------------------
// CSV ingestion: header "x,y", one point per row
// ---------------------------------------------------------------------------

inline std::vector<Vec2> read_xy_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open curve file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw IoFailure("empty curve file: " + path);
  std::vector<Vec2> pts;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw IoFailure("malformed CSV row: " + line);
    pts.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
  }
  return pts;
}

inline void write_xy_csv(const std::string& path, const std::vector<Vec2>& pts) {
  std::ofstream out(path);
  if (!out) throw IoFailure("cannot write: " + path);
  out << "x,y\n";
  char buf[64];
  for (const auto& p : pts) {
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", p.x, p.y);
    out << buf;
  }
}

}  // namespace tubenorm
