#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "aplab/field.hpp"
#include "aplab/lorentz.hpp"

namespace aplab {

// Problem data for J_{A,f}(v) = \int 1/2 <A grad v, grad v> + f (v+)^gamma.
// p = +infinity is allowed and means a bounded source (n/p = 0 everywhere).
struct ProblemParams {
  GridPtr grid;
  double gamma = 0.5;
  double p = 4.0;
  MatrixField A;
  ScalarField f;
  ScalarField g;  // boundary data, sampled on (at least) the Dirichlet support

  double n_over_p() const;
  void validate() const;
};

struct ScalingTransform {
  double rho = 1.0;
  double kappa = 1.0;
  Point center{0, 0, 0};

  void validate() const;
};

// ---- discrete Dirichlet form -------------------------------------------------
//
// The quadratic part is assembled from multilinear (Q1) elements spanning
// 2^dim adjacent cell centers, integrated exactly with tensor Gauss points and
// cell-averaged coefficients. The form is symmetric positive semidefinite
// with only constants in its kernel, and its exact adjoint doubles as the
// discrete div(A grad .) operator.

double dirichlet_energy(const MatrixField& A, const ScalarField& u, const Region& region);

// accumulates d/du_i of (1/2) a(u,u) into grad (grad must have cell count size)
void accumulate_dirichlet_gradient(const MatrixField& A, const ScalarField& u,
                                   const Region& region, std::vector<double>& grad);

// fused value + gradient in one element pass (hot path of the minimizer)
double dirichlet_energy_and_gradient(const MatrixField& A, const ScalarField& u,
                                     const Region& region, std::vector<double>& grad);

// diagonal of the stiffness matrix (for preconditioning)
std::vector<double> dirichlet_diagonal(const MatrixField& A, const Region& region);

// ---- energy and its smoothed surrogate ---------------------------------------

double energy(const ProblemParams& params, const ScalarField& u, const Region& region);
double energy(const ProblemParams& params, const ScalarField& u);

// C^1 smoothing of s -> (s+)^gamma with phi_eps(0) = 0, so zero sets keep
// exactly zero absorption energy at every eps.
double phi_eps(double u, double gamma, double eps);
double phi_eps_prime(double u, double gamma, double eps);

// surrogate energy with the gamma term replaced by phi_eps
double smoothed_energy(const ProblemParams& params, const ScalarField& u, double eps);

struct SmoothedGradient {
  double value = 0;
  ScalarField grad;  // exact discrete gradient of the surrogate energy
};

SmoothedGradient smoothed_energy_gradient(const ProblemParams& params, const ScalarField& u,
                                          double eps);

// ---- Euler-Lagrange residual --------------------------------------------------

struct ElResidualReport {
  ScalarField residual;       // div(A grad u) - gamma f u^{gamma-1}, zero off-region
  CellMask region;            // {u > t_pos} eroded by two cells
  double max_norm = 0;
  double l2_norm = 0;         // quadrature-weighted
  std::size_t cell_count = 0;
  bool empty = false;
};

ElResidualReport el_residual(const ProblemParams& params, const ScalarField& u, double t_pos);

// ---- harmonic replacement ------------------------------------------------------

// Discrete A-harmonic function agreeing with u outside B_R(x0); the interior
// system is solved by Jacobi-preconditioned CG to relative residual 1e-10.
ScalarField harmonic_replacement(const MatrixField& A, const ScalarField& u, const Point& x0,
                                 double R);

// ---- rescaling -----------------------------------------------------------------

struct RescaledProblem {
  ProblemParams params;
  ScalarField u;
};

// u~(y) = kappa u(x0 + rho y), f~(y) = kappa^{2-gamma} rho^2 f(x0 + rho y),
// A~(y) = A(x0 + rho y), with multilinear resampling onto the unit-ball grid.
RescaledProblem rescale_problem(const ProblemParams& params, const ScalarField& u,
                                const ScalingTransform& t);

// multilinear interpolation of a sampled field (coordinates clamped to the box)
double interp_field(const ScalarField& f, const Point& x);

// ---- linear solve helper (shared with the solver module) -----------------------

struct LinearSolveStats {
  int iterations = 0;
  double rel_residual = 0;
};

// Solves the Dirichlet-form stationarity system for the cells marked unknown,
// holding every other cell at its current value in u. On return u holds the
// solution at unknown cells. Throws if CG stalls above the tolerance.
LinearSolveStats solve_dirichlet_system(const MatrixField& A, ScalarField& u,
                                        const std::vector<std::uint8_t>& unknown,
                                        double rel_tol = 1e-10);

}  // namespace aplab
