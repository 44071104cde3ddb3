#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace tubenorm {

inline constexpr const char* kVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define TUBENORM_ERROR(Name)                    \
  struct Name : Error {                         \
    using Error::Error;                         \
  }

TUBENORM_ERROR(DegenerateInput);
TUBENORM_ERROR(TooFewPoints);
TUBENORM_ERROR(SelfIntersecting);
TUBENORM_ERROR(TubeNotRegular);
TUBENORM_ERROR(NoConvergence);
TUBENORM_ERROR(BadRadii);
TUBENORM_ERROR(MeshFailure);
TUBENORM_ERROR(SingularSystem);
TUBENORM_ERROR(MissingEta);
TUBENORM_ERROR(IllConditioned);
TUBENORM_ERROR(ConfigInvalid);
TUBENORM_ERROR(IoFailure);

#undef TUBENORM_ERROR

// ---------------------------------------------------------------------------
// 2-D vectors
// ---------------------------------------------------------------------------

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double a) const { return {a * x, a * y}; }
  Vec2 operator/(double a) const { return {x / a, y / a}; }
  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }

  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  // scalar cross product x1 y2 - x2 y1
  double cross(Vec2 o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
  double squared_norm() const { return x * x + y * y; }
  Vec2 normalized() const {
    const double n = norm();
    return n > 0 ? Vec2{x / n, y / n} : Vec2{0, 0};
  }
  // anticlockwise quarter turn
  Vec2 rot90() const { return {-y, x}; }
};

inline Vec2 operator*(double a, Vec2 v) { return v * a; }

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Small numeric helpers
// ---------------------------------------------------------------------------

// Composite trapezoid over uniformly spaced samples.
inline double trapezoid(const std::vector<double>& y, double h) {
  if (y.size() < 2) return 0.0;
  double s = 0.5 * (y.front() + y.back());
  for (std::size_t i = 1; i + 1 < y.size(); ++i) s += y[i];
  return s * h;
}

// Mean of periodic samples times period length == trapezoid on the torus.
inline double periodic_integral(const std::vector<double>& y, double period = 1.0) {
  if (y.empty()) return 0.0;
  double s = 0.0;
  for (double v : y) s += v;
  return s / static_cast<double>(y.size()) * period;
}

// Composite Simpson on an odd number of uniformly spaced samples.
inline double simpson(const std::vector<double>& y, double h) {
  const std::size_t n = y.size();
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("simpson: need odd sample count >= 3");
  double s = y.front() + y.back();
  for (std::size_t i = 1; i + 1 < n; ++i) s += (i % 2 ? 4.0 : 2.0) * y[i];
  return s * h / 3.0;
}

// Periodic linear interpolation of samples y_k at s_k = k/N, s in R.
inline double interp_periodic(const std::vector<double>& y, double s) {
  const std::size_t n = y.size();
  double u = (s - std::floor(s)) * static_cast<double>(n);
  std::size_t i = static_cast<std::size_t>(u) % n;
  const double f = u - std::floor(u);
  return y[i] * (1.0 - f) + y[(i + 1) % n] * f;
}

// Linear interpolation of samples y_k at s_k = k/(N-1), s clamped to [0,1].
inline double interp_clamped(const std::vector<double>& y, double s) {
  const std::size_t n = y.size();
  if (s <= 0.0) return y.front();
  if (s >= 1.0) return y.back();
  const double u = s * static_cast<double>(n - 1);
  std::size_t i = static_cast<std::size_t>(u);
  if (i >= n - 1) return y.back();
  const double f = u - static_cast<double>(i);
  return y[i] * (1.0 - f) + y[i + 1] * f;
}

// Solve tridiagonal system in place; a=sub, b=diag, c=super (sizes n, n, n; a[0], c[n-1] unused).
inline std::vector<double> solve_tridiagonal(std::vector<double> a, std::vector<double> b,
                                             std::vector<double> c, std::vector<double> d) {
  const std::size_t n = b.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double m = a[i] / b[i - 1];
    b[i] -= m * c[i - 1];
    d[i] -= m * d[i - 1];
  }
  std::vector<double> x(n);
  x[n - 1] = d[n - 1] / b[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = (d[i] - c[i] * x[i + 1]) / b[i];
  return x;
}

// Cyclic tridiagonal solve via the rank-one correction of the periodic system.
inline std::vector<double> solve_cyclic_tridiagonal(const std::vector<double>& a,
                                                    const std::vector<double>& b,
                                                    const std::vector<double>& c,
                                                    const std::vector<double>& d) {
  const std::size_t n = b.size();
  if (n < 3) throw std::invalid_argument("cyclic tridiagonal: n >= 3");
  const double alpha = c[n - 1];  // wrap (n-1)->0
  const double beta = a[0];       // wrap 0->(n-1)
  const double gamma = -b[0];
  std::vector<double> bb(b);
  bb[0] = b[0] - gamma;
  bb[n - 1] = b[n - 1] - alpha * beta / gamma;
  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = alpha;
  auto x = solve_tridiagonal(a, bb, c, d);
  auto z = solve_tridiagonal(a, bb, c, u);
  const double fact = (x[0] + beta * x[n - 1] / gamma) /
                      (1.0 + z[0] + beta * z[n - 1] / gamma);
  for (std::size_t i = 0; i < n; ++i) x[i] -= fact * z[i];
  return x;
}

// Round to the given number of significant decimal digits (artifact determinism).
inline double round_significant(double x, int digits = 12) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*e", digits - 1, x);
  return std::strtod(buf, nullptr);
}

// FNV-1a 64-bit hash, hex-encoded; used to stamp artifacts with their config.
inline std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace tubenorm
