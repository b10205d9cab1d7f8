#include "aplab/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aplab {

LorentzReport weak_lp_norm(const ScalarField& f, double p, const CellMask& region) {
  if (!(p > 0)) throw std::invalid_argument("weak_lp_norm: p must be positive");
  const GridDomain& g = *f.grid;
  std::vector<double> vals;
  vals.reserve(g.cells / 2);
  for (std::size_t id = 0; id < g.cells; ++id)
    if (region[id] && g.interior[id]) vals.push_back(std::fabs(f.values[id]));
  if (vals.empty()) throw std::runtime_error("weak_lp_norm: empty region");

  std::sort(vals.begin(), vals.end(), std::greater<double>());
  const double w = g.cell_volume();

  LorentzReport rep;
  rep.p = p;
  double cum = 0;
  std::size_t levels = 0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    cum += w;
    const bool last_of_level = (i + 1 == vals.size()) || (vals[i + 1] != vals[i]);
    if (!last_of_level) continue;
    ++levels;
    if (vals[i] <= 0) continue;
    const double cand = vals[i] * std::pow(cum, 1.0 / p);
    if (cand > rep.weak_norm) {
      rep.weak_norm = cand;
      rep.t_star = vals[i];
    }
  }
  rep.level_count = levels;
  return rep;
}

LorentzReport weak_lp_norm(const ScalarField& f, double p) {
  return weak_lp_norm(f, p, f.grid->interior);
}

EmbeddingCheck embedding_check(const ScalarField& f, double p, double r,
                               const CellMask& region) {
  if (!(r > 0) || !(r < p))
    throw std::invalid_argument("embedding_check: need 0 < r < p");
  const GridDomain& g = *f.grid;

  double lr = 0;
  double measure = 0;
  const double w = g.cell_volume();
  bool any = false;
  for (std::size_t id = 0; id < g.cells; ++id) {
    if (!region[id] || !g.interior[id]) continue;
    any = true;
    lr += w * std::pow(std::fabs(f.values[id]), r);
    measure += w;
  }
  if (!any) throw std::runtime_error("embedding_check: empty region");

  EmbeddingCheck chk;
  chk.p = p;
  chk.r = r;
  chk.lhs = std::pow(lr, 1.0 / r);
  const double weak = weak_lp_norm(f, p, region).weak_norm;
  chk.rhs = std::pow(p / (p - r), 1.0 / r) * std::pow(measure, (p - r) / (p * r)) * weak;
  chk.holds = chk.lhs <= chk.rhs * (1.0 + 1e-12);
  return chk;
}

double default_q_star(int dim, double gamma) {
  if (dim >= 3) return 2.0 * dim / (dim - 2.0);
  return gamma / 0.05;
}

PairingCheck pairing_bound_check(const ScalarField& f, const ScalarField& u,
                                 double gamma, const CellMask& region, double q_star) {
  if (!(gamma > 0) || !(gamma < 2))
    throw std::invalid_argument("pairing_bound_check: gamma must lie in (0,2)");
  if (!(q_star > std::max(2.0, gamma)))
    throw std::invalid_argument("pairing_bound_check: q_star must exceed max(2, gamma)");
  const GridDomain& g = *f.grid;
  const double w = g.cell_volume();
  const double qf = q_star / (q_star - gamma);

  double integral = 0, f_norm_q = 0, u_norm_q = 0;
  bool any = false;
  for (std::size_t id = 0; id < g.cells; ++id) {
    if (!region[id] || !g.interior[id]) continue;
    any = true;
    const double au = std::fabs(u.values[id]);
    integral += w * f.values[id] * std::pow(au, gamma);
    f_norm_q += w * std::pow(std::fabs(f.values[id]), qf);
    u_norm_q += w * std::pow(au, q_star);
  }
  if (!any) throw std::runtime_error("pairing_bound_check: empty region");

  PairingCheck chk;
  chk.q_star = q_star;
  chk.integral = integral;
  chk.bound = std::pow(f_norm_q, 1.0 / qf) * std::pow(u_norm_q, gamma / q_star);
  chk.holds = std::fabs(integral) <= chk.bound * (1.0 + 1e-12);
  return chk;
}

MassConcentrationReport mass_concentration_check(const ScalarField& f, const Point& y0,
                                                 double r0, double p, double tau,
                                                 double eps) {
  const GridDomain& g = *f.grid;
  const int n = g.dim;
  double y0n = 0;
  for (int a = 0; a < n; ++a) y0n += y0[a] * y0[a];
  y0n = std::sqrt(y0n);
  if (y0n + 4.0 * r0 >= 1.0)
    throw std::runtime_error("mass_concentration_check: B_{4 r0}(y0) escapes the unit ball");
  const double tau_lo = 1.0 - std::pow(4.0, -n);
  if (!(tau > tau_lo) || !(tau < 1))
    throw std::invalid_argument("mass_concentration_check: tau must lie in (1-4^{-n}, 1)");
  if (!(eps > 0) || !(eps < std::pow(8.0, -n)))
    throw std::invalid_argument("mass_concentration_check: eps must lie in (0, 8^{-n})");

  MassConcentrationReport rep;
  rep.y0 = y0;
  rep.r0 = r0;
  rep.p = p;
  rep.tau = tau;
  rep.eps = eps;
  rep.verdict = true;

  const double w = g.cell_volume();
  for (double r = r0; r >= 8.0 * g.cell_size; r /= 2.0) {
    const double level = std::pow(r, -static_cast<double>(n) / p);
    double hits = 0, total = 0, neg = 0;
    for (std::size_t id = 0; id < g.cells; ++id) {
      if (!g.interior[id]) continue;
      const double d = dist(g.center(id), y0);
      if (d < 4.0 * r) {
        total += w;
        if (f.values[id] >= level) hits += w;
      }
      if (d < r && f.values[id] < 0) neg += w * (-f.values[id]);
    }
    MassRadiusEntry e;
    e.r = r;
    e.fraction = total > 0 ? hits / total : 0.0;
    e.neg_mass = neg;
    e.tau_ok = e.fraction >= tau;
    e.eps_ok = neg <= eps * std::pow(r, n - static_cast<double>(n) / p);
    rep.verdict = rep.verdict && e.tau_ok && e.eps_ok;
    rep.per_radius.push_back(e);
  }
  if (rep.per_radius.empty()) rep.verdict = false;
  return rep;
}

}  // namespace aplab
