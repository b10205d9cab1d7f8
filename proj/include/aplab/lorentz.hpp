#pragma once

#include <vector>

#include "aplab/field.hpp"

namespace aplab {

struct LorentzReport {
  double p = 0;
  double weak_norm = 0;    // sup_t t |{|f|>t}|^{1/p}
  double t_star = 0;       // level carrying the sup (0 when the field vanishes)
  std::size_t level_count = 0;
};

// Exact weak-L^p norm of the sampled simple function over `region`.
// The sup is attained just below each distinct |f| value, i.e. at candidates
// v * |{|f| >= v}|^{1/p}; the distribution function is computed from one sort.
LorentzReport weak_lp_norm(const ScalarField& f, double p, const CellMask& region);
LorentzReport weak_lp_norm(const ScalarField& f, double p);

struct EmbeddingCheck {
  double lhs = 0;   // ||f||_{L^r(region)}
  double rhs = 0;   // (p/(p-r))^{1/r} |region|^{(p-r)/(pr)} ||f||_{L^{p,inf}}
  double p = 0, r = 0;
  bool holds = false;
};

// Discrete layer-cake embedding bound; exact on quadrature sums, so a
// violation is a bug rather than a tolerance issue.
EmbeddingCheck embedding_check(const ScalarField& f, double p, double r,
                               const CellMask& region);

struct PairingCheck {
  double integral = 0;  // \int f |u|^gamma
  double bound = 0;     // ||f||_{q*/(q*-gamma)} (\int |u|^{q*})^{gamma/q*}
  double q_star = 0;
  bool holds = false;
};

// Default exponent for the pairing bound: 2n/(n-2) in 3D; gamma/eps with
// eps = 0.05 in lower dimensions, where the critical Sobolev exponent is free.
double default_q_star(int dim, double gamma);

PairingCheck pairing_bound_check(const ScalarField& f, const ScalarField& u,
                                 double gamma, const CellMask& region, double q_star);

struct MassRadiusEntry {
  double r = 0;
  double fraction = 0;   // |{f >= r^{-n/p}} cap B_{4r}| / |B_{4r}| (discrete measures)
  double neg_mass = 0;   // \int_{B_r} |f_-|
  bool tau_ok = false;
  bool eps_ok = false;
};

struct MassConcentrationReport {
  Point y0{0, 0, 0};
  double r0 = 0, p = 0, tau = 0, eps = 0;
  std::vector<MassRadiusEntry> per_radius;
  bool verdict = false;  // every dyadic radius passes both conditions
};

// Dyadic check of the source-mass condition down to radius 8h.
MassConcentrationReport mass_concentration_check(const ScalarField& f, const Point& y0,
                                                 double r0, double p, double tau,
                                                 double eps);

}  // namespace aplab
