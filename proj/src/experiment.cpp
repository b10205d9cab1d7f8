#include "aplab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>

#include "aplab/fbanalysis.hpp"
#include "aplab/io.hpp"
#include "aplab/parallel.hpp"
#include "aplab/radial.hpp"
#include "aplab/rng.hpp"
#include "aplab/version.hpp"

namespace aplab {

namespace {

double parse_p(const nlohmann::json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "infinity")
      return std::numeric_limits<double>::infinity();
    throw ConfigError("p: expected a number or \"inf\"");
  }
  return j.get<double>();
}

nlohmann::json p_to_json(double p) {
  if (std::isinf(p)) return "inf";
  return p;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  try {
    c.experiment = j.at("experiment").get<std::string>();
    c.dim = j.value("dim", 2);
    c.resolution = j.value("resolution", 128);
    if (j.contains("resolutions"))
      for (const auto& r : j.at("resolutions")) c.resolutions.push_back(r.get<int>());
    c.gamma = j.value("gamma", 0.5);
    if (j.contains("p")) c.p = parse_p(j.at("p"));
    if (j.contains("source")) c.source = SourceSpec::from_json(j.at("source"));
    if (j.contains("matrix")) c.matrix = MatrixSpec::from_json(j.at("matrix"));
    if (j.contains("boundary")) c.boundary = SourceSpec::from_json(j.at("boundary"));
    if (j.contains("solver")) {
      const auto& s = j.at("solver");
      if (s.contains("eps_schedule")) {
        c.solver.eps_schedule.clear();
        for (const auto& e : s.at("eps_schedule")) c.solver.eps_schedule.push_back(e.get<double>());
      }
      c.solver.tol_g = s.value("tol_g", c.solver.tol_g);
      c.solver.max_iter = s.value("max_iter", c.solver.max_iter);
      c.solver.seed = s.value("seed", c.solver.seed);
      c.solver.multistart = s.value("multistart", c.solver.multistart);
    }
    if (j.contains("analysis")) {
      const auto& a = j.at("analysis");
      c.analysis.t_pos = a.value("t_pos", c.analysis.t_pos);
      if (a.contains("radii"))
        for (const auto& r : a.at("radii")) c.analysis.radii.push_back(r.get<double>());
      if (a.contains("probe")) {
        c.analysis.has_probe = true;
        const auto& pjs = a.at("probe");
        for (std::size_t k = 0; k < pjs.size() && k < 3; ++k)
          c.analysis.probe[k] = pjs[k].get<double>();
      }
      c.analysis.trials = a.value("trials", c.analysis.trials);
      c.analysis.amplitude = a.value("amplitude", c.analysis.amplitude);
      c.analysis.min_density = a.value("min_density", c.analysis.min_density);
    }
    c.seed = j.value("seed", static_cast<std::uint64_t>(1));
    c.output_dir = j.value("output_dir", std::string("."));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json a{{"t_pos", analysis.t_pos},
                   {"trials", analysis.trials},
                   {"amplitude", analysis.amplitude},
                   {"min_density", analysis.min_density}};
  if (!analysis.radii.empty()) a["radii"] = analysis.radii;
  if (analysis.has_probe)
    a["probe"] = {analysis.probe[0], analysis.probe[1], analysis.probe[2]};
  nlohmann::json j{
      {"experiment", experiment},
      {"dim", dim},
      {"resolution", resolution},
      {"gamma", gamma},
      {"p", p_to_json(p)},
      {"source", source.to_json()},
      {"matrix", matrix.to_json()},
      {"boundary", boundary.to_json()},
      {"solver",
       {{"eps_schedule", solver.eps_schedule},
        {"tol_g", solver.tol_g},
        {"max_iter", solver.max_iter},
        {"seed", solver.seed},
        {"multistart", solver.multistart}}},
      {"analysis", a},
      {"seed", seed},
      {"output_dir", output_dir}};
  if (!resolutions.empty()) j["resolutions"] = resolutions;
  return j;
}

void ExperimentConfig::validate() const {
  static const char* names[] = {"radial-check", "minimize", "fb-report", "lorentz-suite",
                                "scaling-suite"};
  bool known = false;
  for (const char* n : names) known = known || experiment == n;
  if (!known) throw ConfigError("experiment: unknown name '" + experiment + "'");
  if (dim < 1 || dim > 3) throw ConfigError("dim: must be in {1,2,3}");
  if (resolution < 8 || resolution % 2 != 0)
    throw ConfigError("resolution: must be even and >= 8");
  for (int r : resolutions)
    if (r < 8 || r % 2 != 0) throw ConfigError("resolutions: entries must be even and >= 8");
  if (!(gamma > 0) || !(gamma < 1))
    throw ConfigError("gamma: must lie in (0,1), got " + std::to_string(gamma));
  if (!std::isinf(p) && !(p > dim / 2.0))
    throw ConfigError("p: must exceed n/2 = " + std::to_string(dim / 2.0));
  try {
    solver.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("solver: ") + e.what());
  }
}

ProblemParams build_problem(const ExperimentConfig& cfg, int resolution) {
  ProblemParams params;
  params.grid = build_ball_grid(cfg.dim, resolution);
  params.gamma = cfg.gamma;
  params.p = cfg.p;
  params.A = sample_matrix(params.grid, cfg.matrix);
  params.f = sample_source(params.grid, "f", cfg.source);
  params.g = sample_plain(params.grid, "g", cfg.boundary);
  params.validate();
  return params;
}

namespace {

struct Gate {
  std::vector<std::string>& failures;
  void check(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

nlohmann::json fit_to_json(const ExponentFit& fit) {
  return {{"radii", fit.radii},   {"values", fit.values}, {"dropped", fit.dropped},
          {"slope", fit.slope},   {"r2", fit.r2},         {"target", fit.target},
          {"tol", fit.tol},       {"pass", fit.pass},     {"reliable", fit.reliable}};
}

nlohmann::json solve_to_json(const SolveResult& res) {
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& s : res.energy_trace)
    stages.push_back({{"eps", s.eps},
                      {"surrogate_start", s.surrogate_start},
                      {"surrogate_end", s.surrogate_end},
                      {"true_energy_end", s.true_energy_end},
                      {"iterations", s.iterations},
                      {"grad_norm", s.grad_norm},
                      {"grad_test_passed", s.grad_test_passed},
                      {"line_search_failed", s.line_search_failed}});
  return {{"energy", res.final_energy},
          {"final_grad_norm", res.final_grad_norm},
          {"eps_final", res.eps_final},
          {"converged", res.converged},
          {"min_before_clamp", res.min_before_clamp},
          {"clamp_energy_delta", res.clamp_energy_delta},
          {"stages", stages}};
}

ScalarField sample_radial_u(GridPtr grid, const RadialCase& rc, double amplitude) {
  return sample_field(grid, "u_exact", [&](const Point& x) {
    double r = 0;
    for (int a = 0; a < grid->dim; ++a) r += x[a] * x[a];
    return amplitude * std::pow(std::sqrt(r), rc.alpha);
  });
}

std::vector<double> default_fit_radii(double h) {
  // five dyadic radii, smallest at least 4h
  std::vector<double> radii;
  double r = 0.5;
  while (radii.size() < 5 && r >= 4.0 * h - 1e-12) {
    radii.push_back(r);
    r /= 2.0;
  }
  return radii;
}

// ------------------------------------------------------------------ radial-check

nlohmann::json radial_check(const ExperimentConfig& cfg, Gate& gate) {
  nlohmann::json rep;
  const RadialCase rc = radial_exact_case(RadialKind::PowerSource, cfg.dim, cfg.gamma, cfg.p);
  rep["case"] = {{"alpha", rc.alpha},        {"theta", rc.theta},
                 {"u_amplitude", rc.u_amplitude}, {"f_amplitude", rc.f_amplitude},
                 {"f_exponent", rc.f_exponent}};

  // substitution residual of the sampled exact pair under grid refinement
  std::vector<int> res_list = cfg.resolutions.empty() ? std::vector<int>{64, 128, 256}
                                                      : cfg.resolutions;
  std::vector<double> max_norms(res_list.size());
  parallel_for(res_list.size(), [&](std::size_t i) {
    ExperimentConfig sub = cfg;
    sub.source = SourceSpec::power(rc.f_amplitude, rc.f_exponent);
    sub.boundary = SourceSpec::power(rc.u_amplitude, rc.alpha);
    ProblemParams params = build_problem(sub, res_list[i]);
    ScalarField u = sample_radial_u(params.grid, rc, rc.u_amplitude);
    auto r = el_residual(params, u, 0.1);
    max_norms[i] = r.max_norm;
  });
  std::vector<double> orders;
  for (std::size_t i = 0; i + 1 < res_list.size(); ++i)
    orders.push_back(std::log2(max_norms[i] / max_norms[i + 1]) /
                     std::log2(static_cast<double>(res_list[i + 1]) / res_list[i]));
  double mean_order = 0;
  for (double o : orders) mean_order += o;
  mean_order /= orders.empty() ? 1.0 : orders.size();
  rep["el_residual"] = {{"resolutions", res_list},
                        {"max_norms", max_norms},
                        {"orders", orders},
                        {"mean_order", mean_order}};
  gate.check(mean_order >= 1.0, "el residual order " + fmt(mean_order) + " < 1.0");

  // growth exponent of the exact solution
  {
    const int fres = std::max(cfg.resolution, 256);
    auto grid = build_ball_grid(cfg.dim, fres);
    ScalarField u = sample_radial_u(grid, rc, rc.u_amplitude);
    auto radii = default_fit_radii(grid->cell_size);
    auto fit = growth_fit(u, {0, 0, 0}, SupMode::SphereSup, radii, rc.theta, 0.1);
    rep["exact_growth_fit"] = fit_to_json(fit);
    gate.check(fit.pass, "exact-field growth slope " + fmt(fit.slope) + " outside target " +
                             fmt(rc.theta) + " +- 0.1");
  }

  // minimization against the admissible sampled exact competitor
  {
    ExperimentConfig sub = cfg;
    sub.source = SourceSpec::power(rc.f_amplitude, rc.f_exponent);
    ProblemParams params = build_problem(sub, cfg.resolution);
    SolveResult sol = minimize(params, cfg.solver);
    rep["solve"] = solve_to_json(sol);
    gate.check(sol.converged, "solver did not converge");

    double gmax = 0;
    for (std::size_t id = 0; id < params.grid->cells; ++id)
      if (params.grid->band[id]) gmax = std::max(gmax, params.g.values[id]);
    ScalarField competitor = sample_radial_u(params.grid, rc, gmax);
    competitor = project_admissible(params, competitor);
    const double e_comp = energy(params, competitor);
    rep["exact_competitor_energy"] = e_comp;
    rep["solver_energy"] = sol.final_energy;
    gate.check(sol.final_energy <= e_comp + 1e-3,
               "solver energy " + fmt(sol.final_energy) + " above exact competitor " +
                   fmt(e_comp) + " + 1e-3");

    // growth fit on the solver output at the origin (reported; informative)
    try {
      auto radii = default_fit_radii(params.grid->cell_size);
      auto fit = growth_fit(sol.u_star, {0, 0, 0}, SupMode::SphereSup, radii, rc.theta, 0.1);
      rep["solver_growth_fit"] = fit_to_json(fit);
    } catch (const std::exception& e) {
      rep["solver_growth_fit"] = {{"error", e.what()}};
    }
  }

  const auto cls = lorentz_classification(-rc.f_exponent, cfg.dim, cfg.p);
  rep["lorentz_classification"] = {{"beta", -rc.f_exponent},
                                   {"in_weak_lp", cls.in_weak_lp},
                                   {"norm_if_member", cls.norm_if_member}};
  gate.check(cls.in_weak_lp, "exact source not in weak-Lp");
  return rep;
}

// ------------------------------------------------------------------ minimize

nlohmann::json minimize_experiment(const ExperimentConfig& cfg, Gate& gate,
                                   const std::string& outdir) {
  nlohmann::json rep;
  ProblemParams params = build_problem(cfg, cfg.resolution);
  SolveResult sol = minimize(params, cfg.solver);
  rep["solve"] = solve_to_json(sol);
  gate.check(sol.converged, "solver did not converge");

  auto probe = minimality_probe(params, sol.u_star, cfg.analysis.trials, cfg.analysis.amplitude,
                                cfg.seed);
  rep["minimality_probe"] = {{"trials", probe.trials},
                             {"min_delta", probe.min_delta},
                             {"tol", probe.tol},
                             {"pass", probe.pass}};
  gate.check(probe.pass, "minimality probe failed (min delta " + fmt(probe.min_delta) + ")");

  double gmax = 0;
  for (std::size_t id = 0; id < params.grid->cells; ++id)
    if (params.grid->band[id]) gmax = std::max(gmax, params.g.values[id]);
  nlohmann::json truncs = nlohmann::json::array();
  for (double M : {gmax, 2.0 * gmax}) {
    auto t = truncation_probe(params, sol.u_star, M);
    truncs.push_back({{"level", t.level},
                      {"energy_u", t.energy_u},
                      {"energy_truncated", t.energy_truncated},
                      {"delta", t.delta},
                      {"pass", t.pass}});
    gate.check(t.pass, "truncation probe at M=" + fmt(M) + " failed");
  }
  rep["truncation_probes"] = truncs;

  auto bound = boundedness_check(params, sol.u_star);
  rep["boundedness"] = {{"max_u", bound.max_u},
                        {"max_g", bound.max_g},
                        {"bound", bound.bound},
                        {"pass", bound.pass}};
  gate.check(bound.pass, "boundedness check failed");

  write_field_csv(outdir + "/u_star.csv", sol.u_star);
  return rep;
}

// ------------------------------------------------------------------ fb-report

nlohmann::json fb_report(const ExperimentConfig& cfg, Gate& gate, const std::string& outdir) {
  nlohmann::json rep;
  ProblemParams params = build_problem(cfg, cfg.resolution);
  SolveResult sol = minimize(params, cfg.solver);
  rep["solve"] = solve_to_json(sol);

  const double h = params.grid->cell_size;
  const double t_pos = cfg.analysis.t_pos > 0 ? cfg.analysis.t_pos : 10.0 * sol.eps_final;
  auto pos = positivity_set(sol.u_star, t_pos);
  rep["positivity"] = {{"t_pos", t_pos},
                       {"positive_cells", mask_count(pos.mask)},
                       {"fb_cells", pos.fb_cells.size()}};
  gate.check(!pos.fb_cells.empty(), "no free-boundary cells detected");
  if (pos.fb_cells.empty()) return rep;

  const Point y0 = cfg.analysis.has_probe ? cfg.analysis.probe
                                          : params.grid->center(pos.fb_cells.front());
  std::vector<double> radii = cfg.analysis.radii.empty() ? dyadic_radii(0.25, 8.0 * h)
                                                         : cfg.analysis.radii;
  auto dens = density_report(sol.u_star, y0, radii);
  nlohmann::json per = nlohmann::json::array();
  std::vector<std::vector<double>> table;
  for (const auto& e : dens.per_radius) {
    per.push_back({{"r", e.r}, {"density", e.density}, {"clipped", e.clipped}});
    table.push_back({e.r, e.density});
  }
  rep["density"] = {{"y0", {y0[0], y0[1], y0[2]}},
                    {"per_radius", per},
                    {"min_density", dens.min_density},
                    {"degradation_alarm", dens.degradation_alarm},
                    {"note", dens.note}};
  gate.check(dens.min_density >= cfg.analysis.min_density,
             "min density " + fmt(dens.min_density) + " below " + fmt(cfg.analysis.min_density));
  gate.check(!dens.degradation_alarm, "density degradation alarm");
  write_table_csv(outdir + "/density.csv", {"r", "density"}, table);
  write_field_csv(outdir + "/u_star.csv", sol.u_star);
  return rep;
}

// ------------------------------------------------------------------ lorentz-suite

ScalarField random_piecewise_field(GridPtr grid, Rng& rng, bool signed_values) {
  ScalarField f = make_field(grid, "random");
  const GridDomain& g = *grid;
  for (std::size_t id = 0; id < g.cells; ++id) f.values[id] = rng.uniform(0.0, 1.0);
  // a few constant patches, including occasional large outliers
  const int patches = 3;
  for (int p = 0; p < patches; ++p) {
    Point c{0, 0, 0};
    for (int a = 0; a < g.dim; ++a) c[a] = rng.uniform(-0.8, 0.8);
    const double rad = rng.uniform(0.05, 0.4);
    double val = rng.uniform(0.0, 4.0);
    if (rng.next_double() < 0.2) val *= rng.uniform(2.0, 20.0);
    for (std::size_t id = 0; id < g.cells; ++id)
      if (dist(g.center(id), c) < rad) f.values[id] = val;
  }
  if (signed_values)
    for (std::size_t id = 0; id < g.cells; ++id)
      if (rng.next_double() < 0.5) f.values[id] = -f.values[id];
  return f;
}

nlohmann::json lorentz_suite(const ExperimentConfig& cfg, Gate& gate) {
  nlohmann::json rep;
  const double p = cfg.p;
  const int n = cfg.dim;

  // weak-norm convergence for the configured source
  std::vector<int> res_list = cfg.resolutions.empty() ? std::vector<int>{64, 128, 256}
                                                      : cfg.resolutions;
  double target = 0;
  bool has_target = false;
  if (cfg.source.terms.size() == 1 && cfg.source.constant == 0.0 && !std::isinf(p)) {
    const auto& t = cfg.source.terms[0];
    if (std::fabs(t.exponent + n / p) < 1e-12) {
      target = std::fabs(t.amplitude) * std::pow(unit_ball_volume(n), 1.0 / p);
      has_target = true;
    }
  }
  std::vector<double> norms(res_list.size());
  parallel_for(res_list.size(), [&](std::size_t i) {
    auto grid = build_ball_grid(n, res_list[i]);
    ScalarField f = sample_source(grid, "f", cfg.source);
    norms[i] = weak_lp_norm(f, p).weak_norm;
  });
  nlohmann::json conv{{"resolutions", res_list}, {"norms", norms}};
  if (has_target) {
    std::vector<double> errs;
    for (double w : norms) errs.push_back(std::fabs(w - target) / target);
    conv["target"] = target;
    conv["rel_errors"] = errs;
    bool monotone = true;
    for (std::size_t i = 0; i + 1 < errs.size(); ++i) monotone = monotone && errs[i + 1] < errs[i];
    conv["monotone"] = monotone;
    gate.check(monotone, "weak-norm error not monotone under refinement");
    gate.check(errs.back() <= 0.03,
               "weak-norm error " + fmt(errs.back()) + " above 3% at finest resolution");
  }
  rep["weak_norm_convergence"] = conv;

  // embedding inequality sweep
  {
    const int trials = cfg.analysis.trials > 0 ? std::max(cfg.analysis.trials, 200) : 200;
    auto grid = build_ball_grid(n, 64);
    const double r = p / 2.0;
    std::vector<std::uint8_t> ok(trials, 0);
    parallel_for(trials, [&](std::size_t t) {
      Rng rng(cfg.seed * 1000003ULL + t);
      ScalarField f = random_piecewise_field(grid, rng, true);
      ok[t] = embedding_check(f, p, r, grid->interior).holds ? 1 : 0;
    });
    int passed = 0;
    for (auto b : ok) passed += b;
    rep["embedding_sweep"] = {{"trials", trials}, {"passed", passed}, {"p", p}, {"r", r}};
    gate.check(passed == trials, "embedding inequality failed in " +
                                     std::to_string(trials - passed) + " cases");
  }

  // pairing (Holder chain) sweep
  {
    const int trials = 100;
    auto grid = build_ball_grid(n, 64);
    const double q_star = default_q_star(n, cfg.gamma);
    std::vector<std::uint8_t> ok(trials, 0);
    parallel_for(trials, [&](std::size_t t) {
      Rng rng(cfg.seed * 7777777ULL + t);
      ScalarField f = random_piecewise_field(grid, rng, true);
      ScalarField u = random_piecewise_field(grid, rng, true);
      ok[t] = pairing_bound_check(f, u, cfg.gamma, grid->interior, q_star).holds ? 1 : 0;
    });
    int passed = 0;
    for (auto b : ok) passed += b;
    rep["pairing_sweep"] = {{"trials", trials}, {"passed", passed}, {"q_star", q_star}};
    gate.check(passed == trials,
               "pairing bound failed in " + std::to_string(trials - passed) + " cases");
  }

  // mass concentration on the canonical centered instance
  if (!std::isinf(p)) {
    auto grid = build_ball_grid(n, cfg.resolution);
    const Point y0 = cfg.analysis.has_probe ? cfg.analysis.probe : Point{0.1, n > 1 ? -0.05 : 0, 0};
    const double C = std::pow(4.0, n / p);
    ScalarField f = sample_source(grid, "f_conc", SourceSpec::power(C, -n / p, y0));
    const double r0 = 0.2;
    const double tau = 1.0 - 0.5 * std::pow(4.0, -n);
    const double eps = 0.5 * std::pow(8.0, -n);
    auto mc = mass_concentration_check(f, y0, r0, p, tau, eps);
    nlohmann::json per = nlohmann::json::array();
    for (const auto& e : mc.per_radius)
      per.push_back({{"r", e.r},
                     {"fraction", e.fraction},
                     {"neg_mass", e.neg_mass},
                     {"tau_ok", e.tau_ok},
                     {"eps_ok", e.eps_ok}});
    rep["mass_concentration"] = {{"p", p},        {"tau", tau},   {"eps", eps},
                                 {"r0", r0},      {"per_radius", per},
                                 {"verdict", mc.verdict}};
    gate.check(mc.verdict, "mass concentration verdict false on the canonical instance");
  }
  return rep;
}

// ------------------------------------------------------------------ scaling-suite

nlohmann::json scaling_suite(const ExperimentConfig& cfg, Gate& gate) {
  nlohmann::json rep;
  ProblemParams params = build_problem(cfg, cfg.resolution);
  const int n = cfg.dim;
  const double np = params.n_over_p();

  // smooth positive test function for the change-of-variables identity
  ScalarField u = sample_field(params.grid, "u_smooth", [&](const Point& x) {
    double r2 = 0;
    for (int a = 0; a < n; ++a) r2 += x[a] * x[a];
    return 1.0 - 0.5 * r2;
  });

  const double base_norm = weak_lp_norm(params.f, cfg.p).weak_norm;
  rep["base_weak_norm"] = base_norm;

  nlohmann::json entries = nlohmann::json::array();
  const std::vector<double> kappas{0.5, 1.0, 2.0};
  const std::vector<double> rhos{0.5, 0.75, 1.0};
  for (double kappa : kappas) {
    for (double rho : rhos) {
      ScalingTransform t{rho, kappa, {0, 0, 0}};
      RescaledProblem rs = rescale_problem(params, u, t);

      const double predicted =
          std::pow(kappa, 2.0 - cfg.gamma) * std::pow(rho, 2.0 - np) * base_norm;
      const double got = weak_lp_norm(rs.params.f, cfg.p).weak_norm;
      const double norm_err = std::fabs(got - predicted) / predicted;

      const double lhs = energy(params, u, Region::ball({0, 0, 0}, rho));
      const double rhs =
          std::pow(rho, n - 2.0) / (kappa * kappa) * energy(rs.params, rs.u, Region::full());
      const double energy_err = std::fabs(lhs - rhs) / std::max(std::fabs(lhs), 1e-12);

      entries.push_back({{"kappa", kappa},
                         {"rho", rho},
                         {"norm_predicted", predicted},
                         {"norm_computed", got},
                         {"norm_rel_err", norm_err},
                         {"energy_lhs", lhs},
                         {"energy_rhs", rhs},
                         {"energy_rel_err", energy_err}});
      gate.check(norm_err <= 0.02, "norm covariance off by " + fmt(norm_err) + " at kappa=" +
                                       fmt(kappa) + " rho=" + fmt(rho));
      gate.check(energy_err <= 0.02, "energy covariance off by " + fmt(energy_err) +
                                         " at kappa=" + fmt(kappa) + " rho=" + fmt(rho));
    }
  }
  rep["grid"] = entries;
  return rep;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::filesystem::create_directories(cfg.output_dir);

  ExperimentResult result;
  Gate gate{result.failures};

  nlohmann::json body;
  if (cfg.experiment == "radial-check")
    body = radial_check(cfg, gate);
  else if (cfg.experiment == "minimize")
    body = minimize_experiment(cfg, gate, cfg.output_dir);
  else if (cfg.experiment == "fb-report")
    body = fb_report(cfg, gate, cfg.output_dir);
  else if (cfg.experiment == "lorentz-suite")
    body = lorentz_suite(cfg, gate);
  else if (cfg.experiment == "scaling-suite")
    body = scaling_suite(cfg, gate);

  result.report = {{"experiment", cfg.experiment},
                   {"results", body},
                   {"failures", result.failures},
                   {"pass", result.failures.empty()}};
  result.exit_code = result.failures.empty() ? 0 : 2;

  nlohmann::json manifest{{"tool", "ap-lab"},
                          {"version", kVersion},
                          {"experiment", cfg.experiment},
                          {"seed", cfg.seed},
                          {"config", cfg.to_json()}};
  write_json_file(cfg.output_dir + "/manifest.json", manifest);
  write_json_file(cfg.output_dir + "/report.json", result.report);
  return result;
}

}  // namespace aplab
