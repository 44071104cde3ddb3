#pragma once

#include <Eigen/Dense>
#include <complex>
#include <unsupported/Eigen/FFT>

#include "tubenorm/mapped_solver.hpp"
#include "tubenorm/systems.hpp"

namespace tubenorm {

inline constexpr const char* kAsymptoticsVersion = "asymptotics/1";

// ---------------------------------------------------------------------------
// Odd trial profiles zeta on [-1,1] with int zeta'^2 = int t zeta
// ---------------------------------------------------------------------------

enum class ProfileKind { Exact, Mollified };

struct TrialProfile {
  ProfileKind kind = ProfileKind::Exact;
  double delta = 0.0;             // support margin (mollified): zeta == 0 on [1-delta, 1]
  double B = 0.0;                 // int zeta'^2 = int t zeta
  std::vector<double> samples;    // uniform on [-1,1], odd count
  std::vector<double> derivative;

  double t_step() const { return 2.0 / (static_cast<double>(samples.size()) - 1.0); }

  double eval(double t) const {
    if (kind == ProfileKind::Exact) return t * (1.0 - t * t) / 6.0;
    return interp_clamped(samples, (t + 1.0) / 2.0);
  }
  double eval_prime(double t) const {
    if (kind == ProfileKind::Exact) return (1.0 - 3.0 * t * t) / 6.0;
    return interp_clamped(derivative, (t + 1.0) / 2.0);
  }
};

inline TrialProfile zeta_profile(ProfileKind kind, double delta = 0.0, int M = 4097) {
  if (M < 129 || M % 2 == 0) throw std::invalid_argument("zeta_profile: odd M >= 129");
  TrialProfile p;
  p.kind = kind;
  const double ht = 2.0 / (M - 1);
  p.samples.resize(M);
  p.derivative.resize(M);
  if (kind == ProfileKind::Exact) {
    p.delta = 0.0;
    for (int i = 0; i < M; ++i) {
      const double t = -1.0 + i * ht;
      p.samples[i] = t * (1.0 - t * t) / 6.0;
      p.derivative[i] = (1.0 - 3.0 * t * t) / 6.0;
    }
    p.B = 2.0 / 45.0;  // int t^2(1-t^2)/6 = int (1-3t^2)^2/36 = 2/45
    return p;
  }
  if (!(delta > 0.0) || delta > 0.2)
    throw std::invalid_argument("zeta_profile: mollified delta in (0, 0.2]");
  p.delta = delta;
  // cosine cutoff of the cubic profile on [1-2delta, 1-delta], rescaled so the
  // profile condition holds exactly in the stored quadrature
  std::vector<double> z(M);
  for (int i = 0; i < M; ++i) {
    const double t = -1.0 + i * ht;
    const double a = std::abs(t);
    double chi = 1.0;
    if (a >= 1.0 - delta)
      chi = 0.0;
    else if (a > 1.0 - 2.0 * delta)
      chi = 0.5 * (1.0 + std::cos(kPi * (a - (1.0 - 2.0 * delta)) / delta));
    z[i] = t * (1.0 - t * t) / 6.0 * chi;
  }
  std::vector<double> dz(M);
  for (int i = 1; i + 1 < M; ++i) dz[i] = (z[i + 1] - z[i - 1]) / (2.0 * ht);
  dz[0] = (z[1] - z[0]) / ht;
  dz[M - 1] = (z[M - 1] - z[M - 2]) / ht;
  std::vector<double> d2(M), tz(M);
  for (int i = 0; i < M; ++i) {
    d2[i] = dz[i] * dz[i];
    tz[i] = (-1.0 + i * ht) * z[i];
  }
  const double I1 = simpson(d2, ht);
  const double I2 = simpson(tz, ht);
  const double c = I2 / I1;  // scale so c^2 I1 == c I2
  for (int i = 0; i < M; ++i) {
    p.samples[i] = c * z[i];
    p.derivative[i] = c * dz[i];
  }
  p.B = c * c * I1;
  return p;
}

// |int zeta'^2 - int t zeta| in the profile's own quadrature.
inline double profile_condition_residual(const TrialProfile& p) {
  const int M = static_cast<int>(p.samples.size());
  const double ht = p.t_step();
  std::vector<double> d2(M), tz(M);
  for (int i = 0; i < M; ++i) {
    const double t = -1.0 + i * ht;
    d2[i] = p.derivative[i] * p.derivative[i];
    tz[i] = t * p.samples[i];
  }
  return std::abs(simpson(d2, ht) - simpson(tz, ht));
}

// ---------------------------------------------------------------------------
// Screened smoothing of the curvature along the curve
// ---------------------------------------------------------------------------

// sup-of-s coefficient C_eps = max_s B^-1 l^-2 int zeta^2 / (1 - eps t kappa(s)) dt.
inline double smoothing_coefficient(const std::vector<double>& kappa, double ell,
                                    double eps, const TrialProfile& p) {
  const int M = static_cast<int>(p.samples.size());
  const double ht = p.t_step();
  double cmax = 0.0;
  std::vector<double> f(M);
  for (double k : kappa) {
    for (int i = 0; i < M; ++i) {
      const double t = -1.0 + i * ht;
      const double denom = 1.0 - eps * t * k;
      if (denom < kEllipticityFloor)
        throw TubeNotRegular("smoothing_coefficient: metric degenerate on the profile support");
      f[i] = p.samples[i] * p.samples[i] / denom;
    }
    cmax = std::max(cmax, simpson(f, ht) / (p.B * ell * ell));
  }
  return cmax;
}

struct SmoothedCurvature {
  std::vector<double> kappa_bar;
  double C_eps = 0.0;
  double eps = 0.0;
  double residual = 0.0;  // sup norm of the screened equation residual
};

// Solves (1 - coeff d^2/ds^2) kbar = kappa on the torus by Fourier
// diagonalisation with the exact symbol 1 + coeff (2 pi k)^2.
inline std::vector<double> screened_smooth(const std::vector<double>& kappa, double coeff) {
  const int N = static_cast<int>(kappa.size());
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> in(N), hat(N);
  for (int i = 0; i < N; ++i) in[i] = kappa[i];
  fft.fwd(hat, in);
  for (int m = 0; m < N; ++m) {
    const double freq = (m <= N / 2) ? m : m - N;
    hat[m] /= 1.0 + coeff * (2.0 * kPi * freq) * (2.0 * kPi * freq);
  }
  std::vector<std::complex<double>> bar(N);
  fft.inv(bar, hat);
  std::vector<double> out(N);
  for (int i = 0; i < N; ++i) out[i] = bar[i].real();
  return out;
}

// Residual of the screened equation evaluated spectrally, relative to kappa.
inline double screened_residual(const std::vector<double>& kappa,
                                const std::vector<double>& kappa_bar, double coeff) {
  const int N = static_cast<int>(kappa.size());
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> kin(N), khat(N), bin(N), bhat(N);
  for (int i = 0; i < N; ++i) {
    kin[i] = kappa[i];
    bin[i] = kappa_bar[i];
  }
  fft.fwd(khat, kin);
  fft.fwd(bhat, bin);
  for (int m = 0; m < N; ++m) {
    const double freq = (m <= N / 2) ? m : m - N;
    bhat[m] = bhat[m] * (1.0 + coeff * (2.0 * kPi * freq) * (2.0 * kPi * freq)) - khat[m];
  }
  std::vector<std::complex<double>> resid(N);
  fft.inv(resid, bhat);
  double rmax = 0.0, kscale = 1.0;
  for (int i = 0; i < N; ++i) {
    rmax = std::max(rmax, std::abs(resid[i]));
    kscale = std::max(kscale, std::abs(kappa[i]));
  }
  return rmax / kscale;
}

inline SmoothedCurvature smooth_curvature(const Curve& curve, double eps,
                                          const TrialProfile& profile) {
  if (!curve.closed()) throw std::invalid_argument("smooth_curvature: closed curve");
  const double rho = global_radius(curve);
  if (eps > kRhoMargin * rho) throw TubeNotRegular("smooth_curvature: eps > 0.95 rho");
  const auto kappa = curvature_values(curve);
  SmoothedCurvature out;
  out.eps = eps;
  out.C_eps = smoothing_coefficient(kappa, curve.length, eps, profile);
  out.kappa_bar = screened_smooth(kappa, eps * eps * out.C_eps);
  out.residual = screened_residual(kappa, out.kappa_bar, eps * eps * out.C_eps);
  return out;
}

// ---------------------------------------------------------------------------
// Trial fields
// ---------------------------------------------------------------------------

// Lower bound for the squared norm: functional value of the two-term odd trial
// field built from the smoothed curvature.  Guaranteed <= solve_closed norm.
inline double trial_lower_bound(const Curve& curve, double eps, const TrialProfile& profile,
                                int Ns = 0, int Nt = 0) {
  if (Ns == 0 || Nt == 0) {
    auto [ns, nt] = default_grid(eps);
    if (Ns == 0) Ns = ns;
    if (Nt == 0) Nt = nt;
  }
  const auto sm = smooth_curvature(curve, eps, profile);
  ParamGrid g = make_closed_grid(curve, eps, Ns, Nt);
  auto gp = std::make_shared<ParamGrid>(g);
  MappedField f;
  f.grid = gp;
  f.values.assign(static_cast<std::size_t>(g.cols()) * g.nt(), 0.0);
  const double e3 = eps * eps * eps;
  for (int i = 0; i < g.cols(); ++i) {
    const double kb = interp_periodic(sm.kappa_bar, g.s_at(i));
    for (int j = 1; j + 1 < g.nt(); ++j)
      f.at(i, j) = g.background(j) + e3 * kb * profile.eval(g.t[j]);
  }
  return mapped_functional(f);
}

// Three-term expansion trial field (even + odd + quartic corrections); vanishes
// at t = +-1 exactly term by term.
inline MappedField trial_upper_profile(const Curve& curve, double eps, int Ns = 0,
                                       int Nt = 0) {
  if (Ns == 0 || Nt == 0) {
    auto [ns, nt] = default_grid(eps);
    if (Ns == 0) Ns = ns;
    if (Nt == 0) Nt = nt;
  }
  ParamGrid g = curve.closed() ? make_closed_grid(curve, eps, Ns, Nt)
                               : make_bulk_grid(curve, eps, Ns, Nt);
  auto gp = std::make_shared<ParamGrid>(g);
  MappedField f;
  f.grid = gp;
  f.values.assign(static_cast<std::size_t>(g.cols()) * g.nt(), 0.0);
  const double e3 = eps * eps * eps, e4 = e3 * eps;
  for (int i = 0; i < g.cols(); ++i) {
    const double k = g.kappa[i];
    for (int j = 1; j + 1 < g.nt(); ++j) {
      const double t = g.t[j];
      f.at(i, j) = g.background(j) + e3 / 6.0 * k * t * (1.0 - t * t) +
                   e4 / 24.0 * k * k * (-3.0 * t * t * t * t + 2.0 * t * t + 1.0);
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// The rescaled excess functional and its curvature limit
// ---------------------------------------------------------------------------

// eps^-5 ||1||^2 - (2/3) eps^-2 l(Gamma); +infinity when the tube is not
// admissible (crossings, or eps beyond the regularity margin).  The eps^-5
// rescaling amplifies the transverse grid error, so each per-curve norm is
// Richardson-extrapolated over a t-grid doubling before rescaling.
inline double g_eps(const CurveSystem& sys, double eps,
                    SolveMethod method = SolveMethod::Direct) {
  if (has_transverse_crossing(sys)) return kInf;
  const auto [len, rho] = system_metrics(sys);
  if (!(eps <= kRhoMargin * rho)) return kInf;
  double total = 0.0;
  for (const auto& c : sys.curves) {
    const auto [Ns, Nt] = default_grid(eps);
    const double coarse = solve_closed(c, eps, Ns, Nt, method).second.norm_sq;
    const double fine = solve_closed(c, eps, Ns, 2 * Nt - 1, method).second.norm_sq;
    total += (4.0 * fine - coarse) / 3.0;
  }
  const double e2 = eps * eps;
  return total / (e2 * e2 * eps) - 2.0 / 3.0 * len / e2;
}

// (2/45) sum_i l(gamma_i) int_{gamma_i} kappa_i^2; +infinity on transverse crossings.
inline double g_zero(const CurveSystem& sys) {
  if (has_transverse_crossing(sys)) return kInf;
  double total = 0.0;
  for (const auto& c : sys.curves) total += c.length * elastica_energy(c);
  return 2.0 / 45.0 * total;
}

// Curvature target without the extra length factor; schedule gaps are
// reported against both normalisations.
inline double curvature_target(const CurveSystem& sys) {
  double total = 0.0;
  for (const auto& c : sys.curves) total += elastica_energy(c);
  return 2.0 / 45.0 * total;
}

// ---------------------------------------------------------------------------
// Expansion fitting
// ---------------------------------------------------------------------------

struct ExpansionFit {
  std::vector<std::pair<double, double>> records;  // (eps, norm_sq)
  bool closed = true;
  bool sanity = false;
  std::vector<int> powers;
  std::vector<double> coeffs;
  std::vector<double> std_errors;
  double condition = 0.0;
  double residual_rms = 0.0;  // weighted residual of the fit

  double coefficient(int power) const {
    for (std::size_t i = 0; i < powers.size(); ++i)
      if (powers[i] == power) return coeffs[i];
    throw std::invalid_argument("coefficient: power not in model");
  }
  double std_error(int power) const {
    for (std::size_t i = 0; i < powers.size(); ++i)
      if (powers[i] == power) return std_errors[i];
    throw std::invalid_argument("std_error: power not in model");
  }
};

// Weighted least squares on the residual r(eps) = norm - (2/3) eps^3 l with the
// known leading term subtracted; rows are scaled by eps^-5.  Sanity mode frees
// c3 and fits the raw records instead.
inline ExpansionFit fit_expansion(std::vector<std::pair<double, double>> records,
                                  bool closed, double ell, bool sanity = false) {
  std::sort(records.begin(), records.end());
  std::vector<double> eps;
  for (const auto& [e, v] : records)
    if (eps.empty() || e != eps.back()) eps.push_back(e);
  if (eps.size() < 5) throw ConfigInvalid("fit_expansion: at least 5 distinct eps");
  if (eps.back() / eps.front() < 4.0)
    throw ConfigInvalid("fit_expansion: eps must span a factor >= 4");

  ExpansionFit fit;
  fit.records = records;
  fit.closed = closed;
  fit.sanity = sanity;
  if (sanity)
    fit.powers = closed ? std::vector<int>{3, 5, 6} : std::vector<int>{3, 4, 5, 6};
  else
    fit.powers = closed ? std::vector<int>{5, 6} : std::vector<int>{4, 5, 6};

  const int n = static_cast<int>(records.size());
  const int p = static_cast<int>(fit.powers.size());
  Eigen::MatrixXd X(n, p);
  Eigen::VectorXd y(n);
  for (int r = 0; r < n; ++r) {
    const double e = records[r].first;
    const double w = std::pow(e, -5.0);
    double target = records[r].second;
    if (!sanity) target -= 2.0 / 3.0 * e * e * e * ell;
    y[r] = target * w;
    for (int c = 0; c < p; ++c) X(r, c) = std::pow(e, fit.powers[c]) * w;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  fit.condition = sv(0) / sv(sv.size() - 1);
  if (!(fit.condition < 1e8)) throw IllConditioned("fit_expansion: condition > 1e8");
  Eigen::VectorXd beta = svd.solve(y);
  const Eigen::VectorXd resid = y - X * beta;
  fit.residual_rms = std::sqrt(resid.squaredNorm() / n);
  const double dof = std::max(1, n - p);
  const double sigma2 = resid.squaredNorm() / dof;
  const Eigen::MatrixXd xtx_inv =
      (X.transpose() * X).ldlt().solve(Eigen::MatrixXd::Identity(p, p));
  fit.coeffs.resize(p);
  fit.std_errors.resize(p);
  for (int c = 0; c < p; ++c) {
    fit.coeffs[c] = beta[c];
    fit.std_errors[c] = std::sqrt(std::max(0.0, sigma2 * xtx_inv(c, c)));
  }
  return fit;
}

// ---------------------------------------------------------------------------
// Convergence experiment: rescaled norms along an eps schedule, with an
// optional perturbed-curve recovery family
// ---------------------------------------------------------------------------

struct GammaRow {
  double eps = 0.0;
  double value = 0.0;     // g_eps
  double gap_curvature = 0.0;  // value - curvature_target (trends to zero)
  double gap_g0 = 0.0;         // value - g_zero (extra length factor)
};

struct RecoveryRow {
  int n = 0;
  double amplitude = 0.0, frequency = 0.0;
  double eps = 0.0;
  double value = 0.0;
  double gap = 0.0;  // value - curvature_target of the perturbed curve
};

struct GammaReport {
  std::vector<GammaRow> schedule;
  bool gap_curvature_monotone = false;
  std::string trending_normalisation;  // which gap shrinks along the schedule
  std::vector<RecoveryRow> recovery;
  unsigned seed = 0;
};

inline GammaReport gamma_experiment(const CurveSystem& target,
                                    const std::vector<double>& eps_schedule,
                                    bool perturbation_mode = false, unsigned seed = 1u) {
  GammaReport rep;
  rep.seed = seed;
  const double tgt = curvature_target(target);
  const double g0 = g_zero(target);
  for (double e : eps_schedule) {
    GammaRow row;
    row.eps = e;
    row.value = g_eps(target, e);
    row.gap_curvature = row.value - tgt;
    row.gap_g0 = row.value - g0;
    rep.schedule.push_back(row);
  }
  rep.gap_curvature_monotone = true;
  for (std::size_t i = 1; i < rep.schedule.size(); ++i)
    if (std::abs(rep.schedule[i].gap_curvature) >
        std::abs(rep.schedule[i - 1].gap_curvature))
      rep.gap_curvature_monotone = false;
  if (rep.schedule.size() >= 2) {
    const double d_curv = std::abs(rep.schedule.back().gap_curvature) -
                          std::abs(rep.schedule.front().gap_curvature);
    const double d_g0 =
        std::abs(rep.schedule.back().gap_g0) - std::abs(rep.schedule.front().gap_g0);
    rep.trending_normalisation = d_curv <= d_g0 ? "curvature-target" : "g0-with-length";
  }

  if (perturbation_mode) {
    if (target.count() != 1)
      throw std::invalid_argument("gamma_experiment: perturbation mode wants one curve");
    const Curve& base = target.curves[0];
    const auto frames = curvature_profile(base);
    for (int n : {2, 4, 8}) {
      const double a = 1.0 / (n * n);
      std::vector<Vec2> pts(base.n());
      for (int i = 0; i < base.n(); ++i) {
        const double s = i * base.h();
        pts[i] = base.pts[i] + a * std::sin(2.0 * kPi * n * s) * frames[i].normal;
      }
      Curve pert = resample_arclength(pts, base.n(), CurveKind::Closed);
      const double rho = global_radius(pert);
      RecoveryRow row;
      row.n = n;
      row.amplitude = a;
      row.frequency = n;
      row.eps = rho / 2.0;
      CurveSystem single({pert});
      row.value = g_eps(single, row.eps);
      row.gap = row.value - curvature_target(single);
      rep.recovery.push_back(row);
    }
  }
  return rep;
}

}  // namespace tubenorm
