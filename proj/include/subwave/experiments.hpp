#ifndef SUBWAVE_EXPERIMENTS_HPP
#define SUBWAVE_EXPERIMENTS_HPP

#include <map>
#include <string>
#include <vector>

#include "subwave/config.hpp"
#include "subwave/spectra.hpp"

namespace subwave {

enum class Experiment { decay, defect, two_defect, ssh, band };

Experiment experiment_from_string(const std::string& name);
const char* to_string(Experiment e);

struct ExperimentResult {
  std::string scenario_name;
  std::vector<std::string> files;          // paths written
  std::map<std::string, double> summary;   // metric name -> value
  double wall_time = 0.0;                  // seconds
};

/// Run one of the reproduction drivers; writes CSV outputs plus a
/// summary.json into config.output_dir. Deterministic across runs and
/// worker counts.
ExperimentResult run_experiment(Experiment name, const ScenarioConfig& config, int threads = 0);

}  // namespace subwave

#endif
