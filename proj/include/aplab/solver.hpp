#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aplab/energy.hpp"

namespace aplab {

struct SolverConfig {
  std::vector<double> eps_schedule{1e-1, 1e-2, 1e-3, 1e-4};
  double tol_g = 1e-8;   // stage stops when grad norm <= tol_g * (1 + |energy|)
  int max_iter = 20000;  // per continuation stage
  std::uint64_t seed = 0;
  int multistart = 0;    // extra bump-perturbed restarts (sign-changing sources)

  void validate() const;
};

struct StageRecord {
  double eps = 0;
  double surrogate_start = 0;
  double surrogate_end = 0;
  double true_energy_end = 0;
  int iterations = 0;
  double grad_norm = 0;
  bool grad_test_passed = false;
  bool line_search_failed = false;
};

struct SolveResult {
  ScalarField u_star;
  std::vector<StageRecord> energy_trace;
  double final_energy = 0;       // true (nonsmooth) energy after the clamp
  double final_grad_norm = 0;
  double eps_final = 0;
  bool converged = false;        // final-stage gradient test passed
  double min_before_clamp = 0;
  double clamp_energy_delta = 0; // true-energy change of the final clamp to u >= 0
  double wall_time_sec = 0;      // excluded from report payloads
  std::vector<double> multistart_energies;
};

// A-harmonic extension of the boundary data (the solver's initial iterate).
ScalarField harmonic_extension(const ProblemParams& params);

// Copy of u with every Dirichlet-support cell set to the boundary data; used
// to turn sampled exact solutions into admissible energy competitors.
ScalarField project_admissible(const ProblemParams& params, const ScalarField& u);

// Smoothing continuation over eps with a Polak-Ribiere conjugate-gradient
// inner loop and Armijo backtracking. Dirichlet cells are never updated.
SolveResult minimize(const ProblemParams& params, const SolverConfig& config);

struct ProbeReport {
  int trials = 0;
  double min_delta = 0;   // min over trials of J(u+v) - J(u)
  double tol = 0;
  bool pass = false;
};

// Random compactly-supported bump perturbations (both signs per trial),
// vanishing on the Dirichlet support.
ProbeReport minimality_probe(const ProblemParams& params, const ScalarField& u, int trials,
                             double amplitude, std::uint64_t seed);

struct TruncationReport {
  double level = 0;
  double energy_u = 0;
  double energy_truncated = 0;
  double delta = 0;  // J(min(u,M)) - J(u)
  double tol = 0;
  bool pass = false; // delta >= -tol
};

TruncationReport truncation_probe(const ProblemParams& params, const ScalarField& u, double M);

struct BoundednessReport {
  double max_u = 0;
  double max_g = 0;
  double source_scale = 0;  // ||f||-derived amplitude
  double bound = 0;         // 10 (max g + source_scale^{1/(2-gamma)})
  bool pass = false;
};

BoundednessReport boundedness_check(const ProblemParams& params, const ScalarField& u);

}  // namespace aplab
