#include "aplab/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "aplab/rng.hpp"

namespace aplab {

void SolverConfig::validate() const {
  if (eps_schedule.empty())
    throw std::invalid_argument("SolverConfig: eps_schedule must not be empty");
  double prev = std::numeric_limits<double>::infinity();
  for (double e : eps_schedule) {
    if (!(e > 0) || !(e < prev))
      throw std::invalid_argument("SolverConfig: eps_schedule must be strictly decreasing and positive");
    prev = e;
  }
  if (!(tol_g > 0)) throw std::invalid_argument("SolverConfig: tol_g must be positive");
  if (max_iter < 1) throw std::invalid_argument("SolverConfig: max_iter must be >= 1");
  if (multistart < 0) throw std::invalid_argument("SolverConfig: multistart must be >= 0");
}

ScalarField harmonic_extension(const ProblemParams& params) {
  const GridDomain& g = *params.grid;
  ScalarField u = params.g;
  u.name = "harmonic_extension";
  std::vector<std::uint8_t> unknown(g.cells, 0);
  for (std::size_t id = 0; id < g.cells; ++id) unknown[id] = g.is_free(id) ? 1 : 0;
  solve_dirichlet_system(params.A, u, unknown);
  return u;
}

ScalarField project_admissible(const ProblemParams& params, const ScalarField& u) {
  const GridDomain& g = *params.grid;
  ScalarField v = u;
  v.name = u.name + "_admissible";
  for (std::size_t id = 0; id < g.cells; ++id)
    if (!g.is_free(id)) v.values[id] = params.g.values[id];
  return v;
}

namespace {

// functional L2 norm of the gradient restricted to free cells:
// grad_i = w * dE/du_i pointwise, so ||dE/du||_{L2}^2 = sum grad_i^2 / w
double free_grad_norm(const GridDomain& g, const std::vector<double>& grad) {
  double s = 0;
  for (std::size_t id = 0; id < g.cells; ++id)
    if (g.is_free(id)) s += grad[id] * grad[id];
  return std::sqrt(s / g.cell_volume());
}

struct StageOutcome {
  StageRecord record;
  double grad_norm = 0;
};

StageOutcome run_stage(const ProblemParams& params, ScalarField& u, double eps,
                       const SolverConfig& config) {
  const GridDomain& g = *params.grid;
  const std::size_t n = g.cells;

  auto eval = [&](const ScalarField& v) { return smoothed_energy(params, v, eps); };

  SmoothedGradient sg = smoothed_energy_gradient(params, u, eps);
  for (std::size_t id = 0; id < n; ++id)
    if (!g.is_free(id)) sg.grad.values[id] = 0;

  StageOutcome out;
  out.record.eps = eps;
  out.record.surrogate_start = sg.value;

  std::vector<double> dir(n, 0.0), grad_prev(n, 0.0);
  for (std::size_t id = 0; id < n; ++id) dir[id] = -sg.grad.values[id];

  ScalarField trial = u;
  double E = sg.value;
  double gnorm = free_grad_norm(g, sg.grad.values);
  double step = 1.0;
  int it = 0;
  bool ls_failed = false;

  const double c1 = 1e-4;

  while (it < config.max_iter && gnorm > config.tol_g * (1.0 + std::fabs(E))) {
    if (!std::isfinite(E)) throw std::runtime_error("minimize: non-finite energy");

    double gTd = 0;
    for (std::size_t id = 0; id < n; ++id) gTd += sg.grad.values[id] * dir[id];
    bool steepest = false;
    if (!(gTd < 0)) {  // restart on a non-descent direction
      for (std::size_t id = 0; id < n; ++id) dir[id] = -sg.grad.values[id];
      gTd = 0;
      for (std::size_t id = 0; id < n; ++id) gTd -= sg.grad.values[id] * sg.grad.values[id];
      steepest = true;
      if (!(gTd < 0)) break;  // zero gradient
    }

    double t = std::min(step * 2.0, 1e6);
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t id = 0; id < n; ++id) trial.values[id] = u.values[id] + t * dir[id];
      const double Et = eval(trial);
      if (std::isfinite(Et) && Et <= E + c1 * t * gTd) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      if (!steepest) {  // retry once along steepest descent
        for (std::size_t id = 0; id < n; ++id) dir[id] = -sg.grad.values[id];
        continue;
      }
      ls_failed = true;
      break;
    }

    step = t;
    u.values.swap(trial.values);
    grad_prev.swap(sg.grad.values);

    sg = smoothed_energy_gradient(params, u, eps);
    for (std::size_t id = 0; id < n; ++id)
      if (!g.is_free(id)) sg.grad.values[id] = 0;
    E = sg.value;
    gnorm = free_grad_norm(g, sg.grad.values);

    // Polak-Ribiere+ update
    double num = 0, den = 0;
    for (std::size_t id = 0; id < n; ++id) {
      num += sg.grad.values[id] * (sg.grad.values[id] - grad_prev[id]);
      den += grad_prev[id] * grad_prev[id];
    }
    const double beta = den > 0 ? std::max(0.0, num / den) : 0.0;
    for (std::size_t id = 0; id < n; ++id)
      dir[id] = -sg.grad.values[id] + beta * dir[id];
    ++it;
  }

  out.record.surrogate_end = E;
  out.record.iterations = it;
  out.record.grad_norm = gnorm;
  out.record.grad_test_passed = gnorm <= config.tol_g * (1.0 + std::fabs(E));
  out.record.line_search_failed = ls_failed;
  out.record.true_energy_end = energy(params, u);
  out.grad_norm = gnorm;
  return out;
}

SolveResult run_continuation(const ProblemParams& params, const SolverConfig& config,
                             ScalarField u0) {
  SolveResult res;
  ScalarField u = std::move(u0);
  for (double eps : config.eps_schedule) {
    StageOutcome st = run_stage(params, u, eps, config);
    res.energy_trace.push_back(st.record);
    res.final_grad_norm = st.grad_norm;
  }
  res.eps_final = config.eps_schedule.back();
  res.converged = res.energy_trace.back().grad_test_passed;

  // final projection onto the nonnegative cone, energy change reported
  const GridDomain& g = *params.grid;
  double mn = 0;
  for (std::size_t id = 0; id < g.cells; ++id)
    if (g.is_free(id)) mn = std::min(mn, u.values[id]);
  res.min_before_clamp = mn;
  const double e_before = energy(params, u);
  for (std::size_t id = 0; id < g.cells; ++id)
    if (g.is_free(id) && u.values[id] < 0) u.values[id] = 0;
  const double e_after = energy(params, u);
  res.clamp_energy_delta = e_after - e_before;
  res.final_energy = e_after;
  res.u_star = std::move(u);
  res.u_star.name = "u_star";
  return res;
}

}  // namespace

SolveResult minimize(const ProblemParams& params, const SolverConfig& config) {
  params.validate();
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const GridDomain& g = *params.grid;

  ScalarField init = harmonic_extension(params);
  SolveResult best = run_continuation(params, config, init);
  std::vector<double> all_energies{best.final_energy};

  if (config.multistart > 0) {
    Rng rng(config.seed);
    double gmax = 0;
    for (std::size_t id = 0; id < g.cells; ++id)
      if (g.band[id]) gmax = std::max(gmax, params.g.values[id]);
    for (int k = 0; k < config.multistart; ++k) {
      ScalarField u0 = init;
      const int bumps = 3;
      for (int b = 0; b < bumps; ++b) {
        Point c{0, 0, 0};
        for (int a = 0; a < g.dim; ++a) c[a] = rng.uniform(-0.7, 0.7);
        const double rad = rng.uniform(0.1, 0.3);
        const double amp = rng.uniform(-0.5, 0.5) * (gmax > 0 ? gmax : 1.0);
        for (std::size_t id = 0; id < g.cells; ++id) {
          if (!g.is_free(id)) continue;
          const double d = dist(g.center(id), c);
          if (d < rad) {
            const double cth = std::cos(0.5 * std::numbers::pi * d / rad);
            u0.values[id] += amp * cth * cth;
          }
        }
      }
      SolveResult cand = run_continuation(params, config, std::move(u0));
      all_energies.push_back(cand.final_energy);
      if (cand.final_energy < best.final_energy) best = std::move(cand);
    }
  }
  best.multistart_energies = std::move(all_energies);
  best.wall_time_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return best;
}

ProbeReport minimality_probe(const ProblemParams& params, const ScalarField& u, int trials,
                             double amplitude, std::uint64_t seed) {
  const GridDomain& g = *params.grid;
  const double J0 = energy(params, u);
  Rng rng(seed);

  std::vector<std::size_t> free_cells;
  for (std::size_t id = 0; id < g.cells; ++id)
    if (g.is_free(id)) free_cells.push_back(id);

  ProbeReport rep;
  rep.trials = trials;
  rep.tol = 1e-4 * (1.0 + std::fabs(J0));
  rep.min_delta = std::numeric_limits<double>::infinity();

  ScalarField v = u;
  for (int tr = 0; tr < trials; ++tr) {
    const Point c = g.center(free_cells[rng.next_below(free_cells.size())]);
    const double rad = rng.uniform(3.0 * g.cell_size, 0.25);
    // collect the bump once, test both signs
    std::vector<std::pair<std::size_t, double>> bump;
    for (std::size_t id = 0; id < g.cells; ++id) {
      if (!g.is_free(id)) continue;
      const double d = dist(g.center(id), c);
      if (d < rad) {
        const double cth = std::cos(0.5 * std::numbers::pi * d / rad);
        bump.emplace_back(id, amplitude * cth * cth);
      }
    }
    for (int sign = -1; sign <= 1; sign += 2) {
      for (auto& [id, val] : bump) v.values[id] = u.values[id] + sign * val;
      const double J = energy(params, v);
      rep.min_delta = std::min(rep.min_delta, J - J0);
      for (auto& [id, val] : bump) v.values[id] = u.values[id];
    }
  }
  rep.pass = rep.min_delta >= -rep.tol;
  return rep;
}

TruncationReport truncation_probe(const ProblemParams& params, const ScalarField& u, double M) {
  TruncationReport rep;
  rep.level = M;
  rep.energy_u = energy(params, u);
  ScalarField v = u;
  for (double& val : v.values) val = std::min(val, M);
  rep.energy_truncated = energy(params, v);
  rep.delta = rep.energy_truncated - rep.energy_u;
  rep.tol = 1e-4 * (1.0 + std::fabs(rep.energy_u));
  rep.pass = rep.delta >= -rep.tol;
  return rep;
}

BoundednessReport boundedness_check(const ProblemParams& params, const ScalarField& u) {
  const GridDomain& g = *params.grid;
  BoundednessReport rep;
  for (std::size_t id = 0; id < g.cells; ++id) {
    if (g.interior[id]) rep.max_u = std::max(rep.max_u, u.values[id]);
    if (g.band[id]) rep.max_g = std::max(rep.max_g, params.g.values[id]);
  }
  if (std::isinf(params.p)) {
    for (std::size_t id = 0; id < g.cells; ++id)
      if (g.interior[id]) rep.source_scale = std::max(rep.source_scale, std::fabs(params.f.values[id]));
  } else {
    rep.source_scale = weak_lp_norm(params.f, params.p).weak_norm;
  }
  rep.bound = 10.0 * (rep.max_g + std::pow(rep.source_scale, 1.0 / (2.0 - params.gamma)));
  rep.pass = rep.max_u <= rep.bound;
  return rep;
}

}  // namespace aplab
