#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"

#include "aplab/experiment.hpp"
#include "aplab/io.hpp"
#include "aplab/version.hpp"

namespace {

int run(const std::string& experiment, const std::string& config_path, const std::string& out_dir,
        long long seed, int resolution) {
  aplab::ExperimentConfig cfg;
  try {
    nlohmann::json j;
    if (!config_path.empty()) {
      j = aplab::read_json_file(config_path);
    }
    j["experiment"] = experiment;
    if (!out_dir.empty()) j["output_dir"] = out_dir;
    if (seed >= 0) j["seed"] = static_cast<std::uint64_t>(seed);
    if (resolution > 0) j["resolution"] = resolution;
    cfg = aplab::ExperimentConfig::from_json(j);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "ap-lab: invalid config: %s\n", e.what());
    return 1;
  }

  try {
    aplab::ExperimentResult res = aplab::run_experiment(cfg);
    if (res.exit_code == 0) {
      std::printf("ap-lab %s: pass (reports in %s)\n", experiment.c_str(),
                  cfg.output_dir.c_str());
    } else {
      std::printf("ap-lab %s: %zu assertion(s) failed:\n", experiment.c_str(),
                  res.failures.size());
      for (const auto& f : res.failures) std::printf("  - %s\n", f.c_str());
    }
    return res.exit_code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "ap-lab: error: %s\n", e.what());
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ap-lab: a numerical laboratory for singular free-boundary energies"};
  app.set_version_flag("--version", aplab::kVersion);
  app.require_subcommand(1);

  std::string config_path, out_dir;
  long long seed = -1;
  int resolution = 0;

  const char* experiments[] = {"radial-check", "minimize", "fb-report", "lorentz-suite",
                               "scaling-suite"};
  for (const char* name : experiments) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON experiment configuration");
    sub->add_option("--out", out_dir, "output directory for manifest/report/CSV files");
    sub->add_option("--seed", seed, "override the experiment seed");
    sub->add_option("--resolution", resolution, "override the grid resolution");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string experiment = app.get_subcommands().front()->get_name();
  return run(experiment, config_path, out_dir, seed, resolution);
}
