#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "subwave/experiments.hpp"
#include "subwave/parallel.hpp"

using namespace subwave;

int main(int argc, char** argv) {
  CLI::App app{"Quasi-periodic capacitance band solver for subwavelength resonator chains"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int alpha_points = -1, fourier_terms = -1, panels = -1, l = -1, trunc_width = -1, threads = 0;

  for (const char* name : {"decay", "defect", "two_defect", "ssh", "band"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "scenario configuration file (JSON)");
    sub->add_option("--out", out_dir, "output directory (overrides config)");
    sub->add_option("--alpha-points", alpha_points, "Brillouin-zone grid size");
    sub->add_option("--fourier-terms", fourier_terms, "Green function truncation M");
    sub->add_option("--panels", panels, "panels per disk");
    sub->add_option("--l", l, "two_defect separation (bulk disks between defects, odd)");
    sub->add_option("--truncation-width", trunc_width, "band truncation width");
    sub->add_option("--threads", threads, "worker threads (default: machine parallelism)");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string sub_name = app.get_subcommands().front()->get_name();

  try {
    ScenarioConfig config;
    if (!config_path.empty()) config = parse_config(config_path);
    if (!out_dir.empty()) config.output_dir = out_dir;
    if (alpha_points > 0) config.alpha_points = alpha_points;
    if (fourier_terms > 0) config.fourier_terms = fourier_terms;
    if (panels > 0) config.panels_per_disk = panels;
    if (l > 0) config.defect_separation = l;
    if (trunc_width >= 0) config.band_truncation_width = trunc_width;

    const Experiment exp = experiment_from_string(sub_name);
    const ExperimentResult result = run_experiment(exp, config, default_thread_count(threads));

    std::printf("experiment %s (%s) finished in %.1f s\n", sub_name.c_str(),
                result.scenario_name.c_str(), result.wall_time);
    for (const auto& [k, v] : result.summary) std::printf("  %s = %.17g\n", k.c_str(), v);
    for (const auto& f : result.files) std::printf("  wrote %s\n", f.c_str());
    return 0;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error (code %d, key '%s'): %s\n", static_cast<int>(e.code()),
                 e.key().c_str(), e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
