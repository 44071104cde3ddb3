// Command-line driver: norm / alpha / fit / rho / gamma / caps experiments
// configured through a key = value file, emitting JSON/CSV artifacts.

#include <CLI11.hpp>

#include "tubenorm/tubenorm.hpp"

int main(int argc, char** argv) {
  CLI::App app{"squared H^-1 norms of tubular neighbourhoods of plane curves"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int threads = 0;
  for (const std::string name : {"norm", "alpha", "fit", "rho", "gamma", "caps"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "run configuration file")->required();
    sub->add_option("--out", out_dir, "output directory (overrides config)");
    sub->add_option("--threads", threads, "worker threads for eps sweeps");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    tubenorm::RunConfig cfg = tubenorm::parse_config(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (threads > 0) cfg.threads = threads;
    return tubenorm::run(app.get_subcommands().front()->get_name(), std::move(cfg));
  } catch (const tubenorm::ConfigInvalid& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
