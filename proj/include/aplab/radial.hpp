#pragma once

#include <functional>
#include <string>
#include <vector>

#include "aplab/grid.hpp"

namespace aplab {

enum class RadialKind { PowerSource, ConstantSource };

// Closed-form radial solutions of div(grad u) = gamma f u^{gamma-1}.
//
// PowerSource:    u = gamma^{1/(2-gamma)} r^alpha,  f = alpha(n+alpha-2) r^{alpha(2-gamma)-2},
//                 alpha = (2 - n/p)/(2 - gamma) and alpha(2-gamma)-2 = -n/p.
// ConstantSource: u = c r^alpha with alpha = 2/(2-gamma),
//                 c = (gamma/(alpha(alpha+n-2)))^{1/(2-gamma)}, f = 1.
struct RadialCase {
  RadialKind kind = RadialKind::PowerSource;
  int n = 2;
  double gamma = 0.5;
  double p = 4.0;  // +inf for ConstantSource
  double alpha = 0;
  double theta = 0;            // (2 - n/p)/(2 - gamma)
  double u_amplitude = 0;
  double f_amplitude = 0;
  double f_exponent = 0;       // f(r) = f_amplitude * r^{f_exponent}

  double u_of_r(double r) const;
  double f_of_r(double r) const;
  // substitution residual of the radial equation at radius r (exact Laplacian
  // of c r^alpha)
  double residual_of_r(double r) const;
};

RadialCase radial_exact_case(RadialKind kind, int n, double gamma, double p);

struct LorentzClassification {
  bool in_weak_lp = false;
  double norm_if_member = 0;  // amplitude-1 norm over B_1 at membership
};

// Membership of |x|^{-beta} in weak-L^p over the unit ball; at the critical
// exponent beta = n/p the norm equals |B_1|^{1/p}.
LorentzClassification lorentz_classification(double beta, int n, double p);

struct RadialProfile {
  std::vector<double> r;  // cell-centered radial nodes
  std::vector<double> u;
  double core_radius = 0;   // inner edge of the positivity set (0: none found)
  bool has_core = false;
  double boundary_mismatch = 0;
  std::string note;

  double at(double radius) const;  // linear interpolation
};

// Independent 1D oracle for (r^{n-1} u')' = r^{n-1} gamma f(r) u^{gamma-1},
// u(1) = g1, with either a dead-core contact condition u = u' = 0 at the core
// radius (found by bisection on the shooting mismatch) or, when no core
// brackets, the everywhere-positive solution with u'(0) = 0. When several
// shooting roots exist the energy-minimal profile is returned.
RadialProfile radial_bvp_oracle(int n, double gamma, const std::function<double(double)>& f_radial,
                                double g1, int resolution = 4096);

// radial energy of a profile: int_0^1 [ 1/2 u'^2 + f (u+)^gamma ] dS_n r^{n-1} dr
double radial_energy(int n, double gamma, const std::function<double(double)>& f_radial,
                     const RadialProfile& prof);

}  // namespace aplab
