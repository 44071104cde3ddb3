#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "tubenorm/harness.hpp"

using namespace tubenorm;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

RunConfig config_from_string(const std::string& body, const fs::path& dir) {
  const fs::path p = dir / "run.cfg";
  std::ofstream out(p);
  out << body;
  out.close();
  RunConfig cfg = parse_config(p.string());
  cfg.out_dir = (dir / "out").string();
  return cfg;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config parsing: values, lists, comments") {
  TempDir dir("tubenorm_cfg_test");
  RunConfig cfg = config_from_string(
      "curve.source = circle   # comment\n"
      "curve.radius = 2.5\n"
      "\n"
      "eps = 0.1, 0.05, 0.025\n"
      "seed = 42\n",
      dir.path);
  CHECK(cfg.get("curve.source") == "circle");
  CHECK(cfg.get_num("curve.radius", 0) == 2.5);
  CHECK(cfg.get_list("eps") == std::vector<double>{0.1, 0.05, 0.025});
  CHECK(cfg.seed == 42u);
  CHECK_THROWS_AS(config_from_string("novalue\n", dir.path), ConfigInvalid);
}

TEST_CASE("run norm: artifacts written with the header stamp") {
  TempDir dir("tubenorm_norm_test");
  RunConfig cfg = config_from_string(
      "curve.source = circle\ncurve.radius = 1\ncurve.n = 512\n"
      "eps = 0.1\ngrid.ns = 128\ngrid.nt = 17\n",
      dir.path);
  REQUIRE(run("norm", cfg) == 0);
  const auto j = ordered_json::parse(slurp(fs::path(cfg.out_dir) / "norm.json"));
  CHECK(j["command"] == "norm");
  CHECK(j["config_hash"].get<std::string>().size() == 16);
  CHECK(j["versions"].contains("mapped_solver"));
  CHECK(j["records"].size() == 1);
  const double norm = j["records"][0]["norm_sq"].get<double>();
  CHECK(norm == Catch::Approx(annulus_norm_exact(1.0, 0.1)).epsilon(1e-3));
  CHECK(fs::exists(fs::path(cfg.out_dir) / "records.csv"));
}

TEST_CASE("run alpha: value within the published band") {
  TempDir dir("tubenorm_alpha_test");
  RunConfig cfg = config_from_string("cap.L = 6\ncap.h = 0.08\n", dir.path);
  REQUIRE(run("alpha", cfg) == 0);
  const auto j = ordered_json::parse(slurp(fs::path(cfg.out_dir) / "alpha.json"));
  CHECK(j["alpha"].get<double>() == Catch::Approx(0.139917).margin(3e-3));
  CHECK(j["error_budget"].get<double>() < 2e-2);
}

TEST_CASE("run fit: empty eps schedule exits 2 without artifacts") {
  TempDir dir("tubenorm_fit_guard");
  RunConfig cfg = config_from_string("curve.source = circle\n", dir.path);
  CHECK(run("fit", cfg) == 2);
  CHECK(!fs::exists(fs::path(cfg.out_dir) / "fit.json"));
  RunConfig inc = config_from_string("curve.source = circle\neps = 0.05, 0.1\n", dir.path);
  CHECK(run("fit", inc) == 2);  // not strictly decreasing
}

TEST_CASE("run rho: circle report") {
  TempDir dir("tubenorm_rho_test");
  RunConfig cfg = config_from_string("curve.source = circle\ncurve.radius = 1.5\ncurve.n = 512\n",
                                     dir.path);
  REQUIRE(run("rho", cfg) == 0);
  const auto j = ordered_json::parse(slurp(fs::path(cfg.out_dir) / "rho.json"));
  CHECK(j["rho"].get<double>() == Catch::Approx(1.5).margin(1e-3));
  CHECK(j["crossings"].empty());
}

TEST_CASE("run rho: straight open curve reports the unbounded sentinel") {
  TempDir dir("tubenorm_rho_open");
  std::vector<Vec2> seg(64);
  for (int i = 0; i < 64; ++i) seg[i] = {i / 63.0, 0.0};
  const fs::path csv = dir.path / "segment.csv";
  write_xy_csv(csv.string(), seg);
  RunConfig cfg = config_from_string("curve.source = csv\ncurve.csv = " + csv.string() +
                                         "\ncurve.kind = open\ncurve.resample = polygon\n"
                                         "curve.n = 64\n",
                                     dir.path);
  REQUIRE(run("rho", cfg) == 0);
  const auto j = ordered_json::parse(slurp(fs::path(cfg.out_dir) / "rho.json"));
  CHECK(j["rho"] == "unbounded");
}

TEST_CASE("run gamma: schedule rows and the trend flag") {
  TempDir dir("tubenorm_gamma_test");
  RunConfig cfg = config_from_string(
      "curve.source = circle\ncurve.n = 1024\neps = 0.1, 0.05\n", dir.path);
  REQUIRE(run("gamma", cfg) == 0);
  const auto j = ordered_json::parse(slurp(fs::path(cfg.out_dir) / "gamma.json"));
  CHECK(j["schedule"].size() == 2);
  CHECK(j["trending_normalisation"] == "curvature-target");
}

TEST_CASE("run caps: decay and comparison report") {
  TempDir dir("tubenorm_caps_test");
  RunConfig cfg = config_from_string("cap.L = 5\ncap.h = 0.08\n", dir.path);
  REQUIRE(run("caps", cfg) == 0);
  const auto j = ordered_json::parse(slurp(fs::path(cfg.out_dir) / "caps.json"));
  CHECK(j["decay_ok"].get<bool>());
  CHECK(j["comparison"]["positive"].get<bool>());
  CHECK(j["psi_min"].get<double>() >= -0.5 - 1e-3);
}

TEST_CASE("determinism: identical config and seed give identical JSON bytes") {
  TempDir dir("tubenorm_det_test");
  const std::string body =
      "curve.source = ellipse\ncurve.a = 1\ncurve.b = 0.8\ncurve.n = 512\n"
      "eps = 0.08, 0.04\ngrid.ns = 128\ngrid.nt = 17\nseed = 9\n";
  RunConfig c1 = config_from_string(body, dir.path);
  REQUIRE(run("norm", c1) == 0);
  const std::string first = slurp(fs::path(c1.out_dir) / "norm.json");
  fs::remove_all(c1.out_dir);
  RunConfig c2 = config_from_string(body, dir.path);
  REQUIRE(run("norm", c2) == 0);
  const std::string second = slurp(fs::path(c2.out_dir) / "norm.json");
  CHECK(first == second);
}

TEST_CASE("plot script: deterministic bytes and slope annotation") {
  TempDir dir("tubenorm_plot_test");
  std::vector<std::pair<double, double>> records;
  for (double e : {0.02, 0.028, 0.04, 0.057, 0.08, 0.1})
    records.push_back({e, annulus_norm_exact(1.0, e)});
  const ExpansionFit fit = fit_expansion(records, true, 2.0 * kPi);
  const fs::path p1 = dir.path / "plot1.gp", p2 = dir.path / "plot2.gp";
  emit_plot_script(fit, 2.0 * kPi, p1.string());
  emit_plot_script(fit, 2.0 * kPi, p2.string());
  const std::string s1 = slurp(p1);
  CHECK(s1 == slurp(p2));
  CHECK(s1.find("slope ~5") != std::string::npos);
  CHECK(s1.find("set logscale xy") != std::string::npos);
  ExpansionFit empty;
  CHECK_THROWS_AS(emit_plot_script(empty, 1.0, (dir.path / "x.gp").string()), IoFailure);
}

TEST_CASE("threads: sweep results identical across worker counts") {
  TempDir dir("tubenorm_thread_test");
  const std::string body =
      "curve.source = circle\ncurve.n = 512\neps = 0.1, 0.08, 0.05, 0.04\n"
      "grid.ns = 128\ngrid.nt = 17\n";
  RunConfig c1 = config_from_string(body, dir.path);
  c1.threads = 1;
  REQUIRE(run("norm", c1) == 0);
  const std::string serial = slurp(fs::path(c1.out_dir) / "norm.json");
  fs::remove_all(c1.out_dir);
  RunConfig c4 = config_from_string(body, dir.path);
  c4.threads = 4;
  REQUIRE(run("norm", c4) == 0);
  CHECK(serial == slurp(fs::path(c4.out_dir) / "norm.json"));
}

TEST_CASE("run norm: solver failure maps to exit 3") {
  TempDir dir("tubenorm_exit3");
  RunConfig cfg = config_from_string("curve.source = circle\neps = 0.96\n", dir.path);
  CHECK(run("norm", cfg) == 3);  // beyond the 0.95 rho margin
}

TEST_CASE("run norm: optional field dump") {
  TempDir dir("tubenorm_fielddump");
  RunConfig cfg = config_from_string(
      "curve.source = circle\ncurve.n = 512\neps = 0.1\n"
      "grid.ns = 128\ngrid.nt = 17\ndump_field = true\n",
      dir.path);
  REQUIRE(run("norm", cfg) == 0);
  const std::string csv = slurp(fs::path(cfg.out_dir) / "field.csv");
  CHECK(csv.rfind("s,t,f\n", 0) == 0);
}

TEST_CASE("plot script: open-curve fits annotate the quartic slope") {
  TempDir dir("tubenorm_plot_open");
  // synthetic open-curve records: leading term plus a pure end-cap term
  std::vector<std::pair<double, double>> records;
  for (double e : {0.005, 0.00707, 0.01, 0.0141, 0.02})
    records.push_back({e, 2.0 / 3.0 * e * e * e + 0.28 * e * e * e * e});
  const ExpansionFit fit = fit_expansion(records, /*closed=*/false, 1.0);
  CHECK(fit.coefficient(4) == Catch::Approx(0.28).epsilon(1e-6));
  const fs::path p = dir.path / "plot.gp";
  emit_plot_script(fit, 1.0, p.string());
  CHECK(slurp(p).find("slope ~4") != std::string::npos);
}

TEST_CASE("open-curve records: decomposition totals carry the end term") {
  TempDir dir("tubenorm_open_norm");
  RunConfig cfg = config_from_string(
      "curve.source = bump\ncurve.straight = 0.4\ncurve.bump_len = 0.2\n"
      "curve.n = 2048\neps = 0.02\ncap.h = 0.05\n",
      dir.path);
  REQUIRE(run("norm", cfg) == 0);
  const auto j = ordered_json::parse(slurp(fs::path(cfg.out_dir) / "norm.json"));
  const double total = j["records"][0]["norm_sq"].get<double>();
  const double e = 0.02;
  const double lead = 2.0 / 3.0 * e * e * e;  // unit length
  const double end_term = 2.0 * 0.139917 * e * e * e * e;
  CHECK(total == Catch::Approx(lead + end_term).epsilon(2e-3));
}
