#pragma once

#include <atomic>
#include <filesystem>
#include <map>
#include <thread>

#include <nlohmann/json.hpp>

#include "tubenorm/asymptotics.hpp"
#include "tubenorm/end_cap.hpp"

namespace tubenorm {

inline constexpr const char* kHarnessVersion = "cli_harness/1";

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// RunConfig: key = value text file
// ---------------------------------------------------------------------------

struct RunConfig {
  std::map<std::string, std::string> kv;
  std::string raw;       // exact file bytes, hashed into artifacts
  std::string out_dir = "artifacts";
  int threads = 1;
  unsigned seed = 1u;

  bool has(const std::string& key) const { return kv.count(key) > 0; }

  std::string get(const std::string& key, const std::string& fallback = "") const {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
  }

  double get_num(const std::string& key, double fallback) const {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
      std::size_t used = 0;
      const double v = std::stod(it->second, &used);
      if (used != it->second.size()) throw std::invalid_argument(it->second);
      return v;
    } catch (const std::exception&) {
      throw ConfigInvalid("config: bad number for '" + key + "': " + it->second);
    }
  }

  int get_int(const std::string& key, int fallback) const {
    const double v = get_num(key, fallback);
    if (v != std::floor(v)) throw ConfigInvalid("config: integer expected for '" + key + "'");
    return static_cast<int>(v);
  }

  std::vector<double> get_list(const std::string& key) const {
    std::vector<double> out;
    std::stringstream ss(get(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      try {
        out.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw ConfigInvalid("config: bad list entry for '" + key + "': " + item);
      }
    }
    return out;
  }
};

inline RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open config: " + path);
  RunConfig cfg;
  std::stringstream buf;
  buf << in.rdbuf();
  cfg.raw = buf.str();
  std::stringstream lines(cfg.raw);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigInvalid("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigInvalid("config line " + std::to_string(lineno) + ": empty key");
    cfg.kv[key] = val;
  }
  cfg.out_dir = cfg.get("out", "artifacts");
  cfg.threads = cfg.get_int("threads", 1);
  cfg.seed = static_cast<unsigned>(cfg.get_int("seed", 1));
  return cfg;
}

// ---------------------------------------------------------------------------
// Curves and systems from config
// ---------------------------------------------------------------------------

inline Curve curve_from_config(const RunConfig& cfg) {
  const std::string source = cfg.get("curve.source", "circle");
  const int n = cfg.get_int("curve.n", 2048);
  if (n < 16) throw ConfigInvalid("curve.n >= 16 required");
  if (source == "circle") {
    const double R = cfg.get_num("curve.radius", 1.0);
    if (!(R > 0)) throw ConfigInvalid("curve.radius must be positive");
    return make_circle(R, n);
  }
  if (source == "ellipse") {
    const double a = cfg.get_num("curve.a", 1.0), b = cfg.get_num("curve.b", 0.6);
    if (!(a > 0) || !(b > 0)) throw ConfigInvalid("ellipse semi-axes must be positive");
    Curve c = make_ellipse(a, b, n);
    const double scale = cfg.get_num("curve.scale_to_length", 0.0);
    if (scale > 0) c = c.scaled(scale / c.length);
    return c;
  }
  if (source == "bump") {
    const double straight = cfg.get_num("curve.straight", 0.4);
    const double bump = cfg.get_num("curve.bump_len", 0.2);
    const double turn = cfg.get_num("curve.turn", kPi / 4.0);
    if (!(straight > 0) || !(bump > 0))
      throw ConfigInvalid("bump curve lengths must be positive");
    return make_straight_ended_bump(straight, bump, turn, n);
  }
  if (source == "csv") {
    const std::string path = cfg.get("curve.csv");
    if (path.empty()) throw ConfigInvalid("curve.csv path required");
    const CurveKind kind =
        cfg.get("curve.kind", "closed") == "open" ? CurveKind::Open : CurveKind::Closed;
    const ResampleMode mode = cfg.get("curve.resample", "spline") == "polygon"
                                  ? ResampleMode::Polygon
                                  : ResampleMode::Spline;
    const double eta = cfg.get_num("curve.eta", 0.0);
    return resample_arclength(read_xy_csv(path), n, kind, mode, eta);
  }
  throw ConfigInvalid("unknown curve.source: " + source);
}

// Manifest: one member curve per line, "<csv-path> closed|open [eta]".
inline CurveSystem system_from_manifest(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open system manifest: " + path);
  std::vector<Curve> curves;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string csv, kind;
    double eta = 0.0;
    ss >> csv >> kind;
    ss >> eta;
    const CurveKind k = kind == "open" ? CurveKind::Open : CurveKind::Closed;
    curves.push_back(resample_arclength(read_xy_csv(csv), n, k, ResampleMode::Spline, eta));
  }
  if (curves.empty()) throw ConfigInvalid("empty system manifest: " + path);
  return CurveSystem(std::move(curves));
}

// ---------------------------------------------------------------------------
// Artifacts
// ---------------------------------------------------------------------------

namespace detail {

inline ordered_json artifact_header(const RunConfig& cfg, const std::string& command) {
  ordered_json j;
  j["command"] = command;
  j["config_hash"] = fnv1a_hex(cfg.raw);
  j["seed"] = cfg.seed;
  j["versions"] = ordered_json{{"tubenorm", kVersion},
                               {"curve_geometry", kGeometryVersion},
                               {"curve_systems", kSystemsVersion},
                               {"mapped_solver", kSolverVersion},
                               {"end_cap", kEndCapVersion},
                               {"asymptotics", kAsymptoticsVersion},
                               {"cli_harness", kHarnessVersion}};
  return j;
}

inline double sig(double x) { return round_significant(x, 12); }

inline void write_text(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("cannot write artifact: " + path);
  out << body;
  if (!out) throw IoFailure("write failed: " + path);
}

inline void write_json(const std::string& path, const ordered_json& j) {
  write_text(path, j.dump(2) + "\n");
}

// deterministic CSV cell
inline std::string csv_num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Per-solve records and the fit/plot pipeline
// ---------------------------------------------------------------------------

struct SolveRecord {
  double eps = 0.0;
  int Ns = 0, Nt = 0;
  double norm_sq = 0.0;
  double residual = 0.0;
  double wall_seconds = 0.0;
};

// Norm records for a curve across an eps schedule.  Open straight-ended curves
// get the decomposition total: bulk solve plus two end caps scaled from the
// cap solve at L = eta l / eps.
inline std::vector<SolveRecord> norm_records(const Curve& curve, const RunConfig& cfg,
                                             const std::vector<double>& eps_list) {
  const int cfg_ns = cfg.get_int("grid.ns", 0);
  const int cfg_nt = cfg.get_int("grid.nt", 0);
  const double cap_h = cfg.get_num("cap.h", 0.04);
  const SolveMethod method =
      cfg.get("solver.method", "ldlt") == "cg" ? SolveMethod::ConjugateGradient
                                               : SolveMethod::Direct;
  std::vector<SolveRecord> records(eps_list.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= eps_list.size()) return;
      const double eps = eps_list[k];
      const auto tic = std::chrono::steady_clock::now();
      SolveRecord rec;
      rec.eps = eps;
      auto [ns, nt] = default_grid(eps);
      if (cfg_ns > 0) ns = cfg_ns;
      if (cfg_nt > 0) nt = cfg_nt;
      rec.Ns = ns;
      rec.Nt = nt;
      if (curve.closed()) {
        const auto [field, res] = solve_closed(curve, eps, ns, nt, method);
        rec.norm_sq = res.norm_sq;
        rec.residual = res.residual;
      } else {
        const auto [field, bulk] = solve_bulk_open(curve, eps, ns, nt, method);
        const double L = curve.eta * curve.length / eps;
        const CapSolution cap = solve_cap_psi(build_cap_domain(L, cap_h));
        const double e3 = eps * eps * eps, e4 = e3 * eps;
        const double cap_contrib =
            2.0 / 3.0 * curve.eta * curve.length * e3 + e4 * cap.alpha_estimate;
        rec.norm_sq = bulk + 2.0 * cap_contrib;
        rec.residual = 0.0;
      }
      rec.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - tic).count();
      records[k] = rec;
    }
  };
  const int nthreads = std::max(1, cfg.threads);
  std::vector<std::thread> pool;
  for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return records;
}

inline void write_records_csv(const std::string& path,
                              const std::vector<SolveRecord>& records) {
  std::string body = "eps,Ns,Nt,norm_sq,residual,wall_seconds\n";
  for (const auto& r : records) {
    body += detail::csv_num(r.eps) + "," + std::to_string(r.Ns) + "," +
            std::to_string(r.Nt) + "," + detail::csv_num(r.norm_sq) + "," +
            detail::csv_num(r.residual) + "," + detail::csv_num(r.wall_seconds) + "\n";
  }
  detail::write_text(path, body);
}

inline void write_field_csv(const std::string& path, const MappedField& field) {
  const ParamGrid& g = *field.grid;
  std::string body = "s,t,f\n";
  for (int i = 0; i < g.cols(); ++i)
    for (int j = 0; j < g.nt(); ++j)
      body += detail::csv_num(g.s_at(i)) + "," + detail::csv_num(g.t[j]) + "," +
              detail::csv_num(field.at(i, j)) + "\n";
  detail::write_text(path, body);
}

// gnuplot-dialect log-log residual plot with the fitted slopes annotated;
// byte-deterministic for a fixed fit
inline void emit_plot_script(const ExpansionFit& fit, double ell, const std::string& path) {
  if (fit.records.empty()) throw IoFailure("emit_plot_script: empty fit");
  std::string s;
  s += "# log-log residual of the squared-norm records after removing the\n";
  s += "# leading (2/3) eps^3 length term, with the fitted model overlaid\n";
  s += "set logscale xy\n";
  s += "set xlabel 'eps'\n";
  s += "set ylabel '|norm - (2/3) eps^3 l|'\n";
  const int lead_power = fit.closed ? 5 : 4;
  s += "set title 'residual branch, leading slope " + std::to_string(lead_power) + "'\n";
  s += "$records << EOD\n";
  for (const auto& [e, v] : fit.records) {
    const double resid = v - 2.0 / 3.0 * e * e * e * ell;
    s += detail::csv_num(e) + " " + detail::csv_num(std::abs(resid)) + "\n";
  }
  s += "EOD\n";
  std::string model;
  for (std::size_t i = 0; i < fit.powers.size(); ++i) {
    if (fit.powers[i] == 3) continue;
    if (!model.empty()) model += " + ";
    model += "(" + detail::csv_num(fit.coeffs[i]) + ")*x**" + std::to_string(fit.powers[i]);
  }
  s += "plot $records using 1:2 with points pt 7 title 'records', \\\n";
  s += "     abs(" + model + ") with lines title 'fit (slope ~" +
       std::to_string(lead_power) + ")'\n";
  detail::write_text(path, s);
}

// ---------------------------------------------------------------------------
// Command dispatch
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<double> eps_schedule(const RunConfig& cfg) {
  const auto eps = cfg.get_list("eps");
  if (eps.empty()) throw ConfigInvalid("eps schedule required");
  for (double e : eps)
    if (!(e > 0)) throw ConfigInvalid("eps entries must be positive");
  for (std::size_t i = 1; i < eps.size(); ++i)
    if (!(eps[i] < eps[i - 1]))
      throw ConfigInvalid("eps schedule must be strictly decreasing");
  return eps;
}

inline ordered_json curve_meta(const Curve& c) {
  return ordered_json{{"kind", c.closed() ? "closed" : "open"},
                      {"samples", c.n()},
                      {"length", sig(c.length)},
                      {"eta", sig(c.eta)},
                      {"reoriented", c.reoriented}};
}

inline int run_norm(const RunConfig& cfg) {
  const Curve curve = curve_from_config(cfg);
  const auto eps = eps_schedule(cfg);
  const auto records = norm_records(curve, cfg, eps);
  const std::filesystem::path out(cfg.out_dir);
  write_records_csv((out / "records.csv").string(), records);
  if (cfg.get("dump_field", "false") == "true" && curve.closed()) {
    const auto [field, res] = solve_closed(curve, eps.front());
    write_field_csv((out / "field.csv").string(), field);
  }
  ordered_json j = artifact_header(cfg, "norm");
  j["curve"] = curve_meta(curve);
  ordered_json rows = ordered_json::array();
  for (const auto& r : records)
    rows.push_back(ordered_json{{"eps", sig(r.eps)},
                                {"Ns", r.Ns},
                                {"Nt", r.Nt},
                                {"norm_sq", sig(r.norm_sq)},
                                {"residual", sig(r.residual)}});
  j["records"] = rows;
  write_json((out / "norm.json").string(), j);
  return 0;
}

inline int run_alpha(const RunConfig& cfg) {
  const double L = cfg.get_num("cap.L", 10.0);
  const double h = cfg.get_num("cap.h", 0.04);
  if (!(L > 0) || !(h > 0)) throw ConfigInvalid("cap.L and cap.h must be positive");
  const AlphaResult res = alpha_constant(h, L);
  ordered_json j = artifact_header(cfg, "alpha");
  j["L"] = sig(L);
  j["h"] = sig(h);
  j["alpha"] = sig(res.alpha);
  j["alpha_coarse"] = sig(res.alpha_coarse);
  j["alpha_fine"] = sig(res.alpha_fine);
  j["error_budget"] = sig(res.error_budget);
  const std::filesystem::path out(cfg.out_dir);
  write_json((out / "alpha.json").string(), j);
  std::string csv = "L,h,integral_psi,alpha,error_budget\n";
  csv += csv_num(L) + "," + csv_num(h) + "," +
         csv_num(res.alpha_fine - 3.0 * kPi / 16.0) + "," + csv_num(res.alpha) + "," +
         csv_num(res.error_budget) + "\n";
  write_text((out / "alpha.csv").string(), csv);
  return 0;
}

inline int run_fit(const RunConfig& cfg) {
  const Curve curve = curve_from_config(cfg);
  const auto eps = eps_schedule(cfg);
  const auto records = norm_records(curve, cfg, eps);
  std::vector<std::pair<double, double>> pairs;
  for (const auto& r : records) pairs.push_back({r.eps, r.norm_sq});
  const bool sanity = cfg.get("fit.sanity", "false") == "true";
  const ExpansionFit fit = fit_expansion(pairs, curve.closed(), curve.length, sanity);

  ordered_json j = artifact_header(cfg, "fit");
  j["curve"] = curve_meta(curve);
  j["model"] = curve.closed() ? "closed" : "open";
  j["sanity_mode"] = sanity;
  ordered_json coeffs = ordered_json::array();
  for (std::size_t i = 0; i < fit.powers.size(); ++i)
    coeffs.push_back(ordered_json{{"power", fit.powers[i]},
                                  {"value", sig(fit.coeffs[i])},
                                  {"std_error", sig(fit.std_errors[i])}});
  j["coefficients"] = coeffs;
  j["condition"] = sig(fit.condition);
  j["residual_rms_weighted"] = sig(fit.residual_rms);
  // comparison targets
  const double curv = 2.0 / 45.0 * elastica_energy(curve);
  ordered_json targets;
  targets["curvature_term"] = sig(curv);
  if (!curve.closed()) {
    const AlphaResult alpha = alpha_constant(cfg.get_num("cap.h", 0.04), 10.0);
    targets["two_alpha"] = sig(2.0 * alpha.alpha);
    targets["gap_two_alpha_rel"] = sig(std::abs(fit.coefficient(4) - 2.0 * alpha.alpha) /
                                       (2.0 * alpha.alpha));
  }
  targets["gap_curvature_rel"] =
      sig(std::abs(fit.coefficient(5) - curv) / std::max(curv, 1e-300));
  j["targets"] = targets;

  const std::filesystem::path out(cfg.out_dir);
  write_records_csv((out / "records.csv").string(), records);
  emit_plot_script(fit, curve.length, (out / "plot.gp").string());
  write_json((out / "fit.json").string(), j);
  return 0;
}

inline int run_rho(const RunConfig& cfg) {
  ordered_json j = artifact_header(cfg, "rho");
  const std::string manifest = cfg.get("system.manifest");
  std::optional<CurveSystem> sys;
  if (!manifest.empty()) {
    sys.emplace(system_from_manifest(manifest, cfg.get_int("curve.n", 1024)));
  } else {
    Curve c = curve_from_config(cfg);
    if (!c.closed()) {
      // single open curve: no crossing classification, just the radius
      j["length"] = sig(c.length);
      const double rho_open = global_radius(c);
      j["rho"] = std::isinf(rho_open) ? ordered_json("unbounded")
                                      : ordered_json(sig(rho_open));
      j["crossings"] = ordered_json::array();
      write_json((std::filesystem::path(cfg.out_dir) / "rho.json").string(), j);
      return 0;
    }
    sys.emplace(std::vector<Curve>{std::move(c)});
  }
  const auto [len, rho] = system_metrics(*sys);
  j["length"] = sig(len);
  j["rho"] = std::isinf(rho) ? ordered_json("unbounded") : ordered_json(sig(rho));
  const double dist_tol = 2.0 * sys->max_sample_spacing();
  const auto crossings = detect_transverse_crossings(*sys, dist_tol, 0.05);
  ordered_json rows = ordered_json::array();
  for (const auto& c : crossings)
    rows.push_back(ordered_json{
        {"x", sig(c.location.x)},
        {"y", sig(c.location.y)},
        {"curve_a", c.curve_a},
        {"curve_b", c.curve_b},
        {"angle", sig(c.angle)},
        {"class", c.classification == CrossingClass::Transverse ? "transverse" : "tangent"}});
  j["crossings"] = rows;
  const std::filesystem::path out(cfg.out_dir);
  write_json((out / "rho.json").string(), j);
  return 0;
}

inline int run_gamma(const RunConfig& cfg) {
  const Curve curve = curve_from_config(cfg);
  if (!curve.closed()) throw ConfigInvalid("gamma experiment needs a closed curve");
  CurveSystem sys({curve});
  const auto eps = eps_schedule(cfg);
  const bool perturb = cfg.get("gamma.perturbation", "false") == "true";
  const GammaReport rep = gamma_experiment(sys, eps, perturb, cfg.seed);
  ordered_json j = artifact_header(cfg, "gamma");
  j["curve"] = curve_meta(curve);
  ordered_json rows = ordered_json::array();
  for (const auto& r : rep.schedule)
    rows.push_back(ordered_json{{"eps", sig(r.eps)},
                                {"g_eps", sig(r.value)},
                                {"gap_curvature", sig(r.gap_curvature)},
                                {"gap_g0", sig(r.gap_g0)}});
  j["schedule"] = rows;
  j["gap_curvature_monotone"] = rep.gap_curvature_monotone;
  j["trending_normalisation"] = rep.trending_normalisation;
  if (perturb) {
    ordered_json rec = ordered_json::array();
    for (const auto& r : rep.recovery)
      rec.push_back(ordered_json{{"n", r.n},
                                 {"amplitude", sig(r.amplitude)},
                                 {"frequency", sig(r.frequency)},
                                 {"eps", sig(r.eps)},
                                 {"g_eps", sig(r.value)},
                                 {"gap", sig(r.gap)}});
    j["recovery"] = rec;
  }
  const std::filesystem::path out(cfg.out_dir);
  write_json((out / "gamma.json").string(), j);
  std::string csv = "eps,g_eps,gap_curvature,gap_g0\n";
  for (const auto& r : rep.schedule)
    csv += csv_num(r.eps) + "," + csv_num(r.value) + "," + csv_num(r.gap_curvature) +
           "," + csv_num(r.gap_g0) + "\n";
  write_text((out / "gamma.csv").string(), csv);
  return 0;
}

inline int run_caps(const RunConfig& cfg) {
  const double L = cfg.get_num("cap.L", 10.0);
  const double h = cfg.get_num("cap.h", 0.04);
  const CapSolution sol = solve_cap_psi(build_cap_domain(L, h));
  const auto stations = decay_check(sol);
  const ComparisonResult cmp = comparison_bound(cfg.seed);
  ordered_json j = artifact_header(cfg, "caps");
  j["L"] = sig(L);
  j["h"] = sig(h);
  j["alpha_estimate"] = sig(sol.alpha_estimate);
  double psi_min = 0.0, psi_max = -1.0;
  for (double v : sol.psi) {
    psi_min = std::min(psi_min, v);
    psi_max = std::max(psi_max, v);
  }
  j["psi_min"] = sig(psi_min);
  j["psi_max"] = sig(psi_max);
  ordered_json rows = ordered_json::array();
  bool all_ok = true;
  for (const auto& st : stations) {
    rows.push_back(ordered_json{{"x", sig(st.x)},
                                {"max_abs_psi", sig(st.max_abs_psi)},
                                {"bound", sig(st.bound)},
                                {"margin", sig(st.margin)}});
    all_ok = all_ok && st.margin >= 0.0;
  }
  j["decay_stations"] = rows;
  j["decay_ok"] = all_ok;
  j["comparison"] = ordered_json{{"integral_tilde_psi", sig(cmp.integral_tilde_psi)},
                                 {"combined", sig(cmp.combined)},
                                 {"positive", cmp.positive},
                                 {"max_laplacian", sig(cmp.max_laplacian)}};
  const std::filesystem::path out(cfg.out_dir);
  write_json((out / "caps.json").string(), j);
  if (cfg.get("dump_field", "false") == "true") {
    std::string csv = "x,y,psi\n";
    for (std::size_t i = 0; i < sol.domain.nodes.size(); ++i)
      csv += csv_num(sol.domain.nodes[i].x) + "," + csv_num(sol.domain.nodes[i].y) +
             "," + csv_num(sol.psi[i]) + "\n";
    write_text((out / "cap_field.csv").string(), csv);
  }
  return 0;
}

}  // namespace detail

// Exit status: 0 success, 2 config/validation failure, 3 solver/module failure.
inline int run(const std::string& command, RunConfig cfg) {
  try {
    std::filesystem::create_directories(cfg.out_dir);
    if (command == "norm") return detail::run_norm(cfg);
    if (command == "alpha") return detail::run_alpha(cfg);
    if (command == "fit") return detail::run_fit(cfg);
    if (command == "rho") return detail::run_rho(cfg);
    if (command == "gamma") return detail::run_gamma(cfg);
    if (command == "caps") return detail::run_caps(cfg);
    throw ConfigInvalid("unknown command: " + command);
  } catch (const ConfigInvalid& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid argument: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}

}  // namespace tubenorm
