#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "aplab/analytic.hpp"
#include "aplab/solver.hpp"

namespace aplab {

// configuration or validation problems; the driver maps these to exit code 1
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AnalysisConfig {
  double t_pos = -1;           // < 0: use 10 * eps_final of the producing solve
  std::vector<double> radii;   // empty: dyadic defaults
  Point probe{0, 0, 0};
  bool has_probe = false;
  int trials = 100;
  double amplitude = 0.01;
  double min_density = 0.05;
};

struct ExperimentConfig {
  std::string experiment;  // radial-check | minimize | fb-report | lorentz-suite | scaling-suite
  int dim = 2;
  int resolution = 128;
  std::vector<int> resolutions;  // sweeps; defaults to {64,128,256} where used
  double gamma = 0.5;
  double p = 4.0;  // +inf means bounded source
  SourceSpec source = SourceSpec::power(1.0, -0.5);
  MatrixSpec matrix;
  SourceSpec boundary = SourceSpec::constant_source(1.0);
  SolverConfig solver;
  AnalysisConfig analysis;
  std::uint64_t seed = 1;
  std::string output_dir = ".";

  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;  // fully resolved (defaults filled in)
  void validate() const;
};

// Builds grid + fields for the configured problem at a given resolution.
ProblemParams build_problem(const ExperimentConfig& cfg, int resolution);

struct ExperimentResult {
  int exit_code = 0;  // 0 pass, 2 assertion failure
  nlohmann::json report;
  std::vector<std::string> failures;
};

// Runs the named experiment and writes manifest.json, report.json and CSV
// outputs into cfg.output_dir. Timing is kept out of the report payload so
// identical configs and seeds reproduce identical bytes.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace aplab
