#include "aplab/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace aplab {

double RadialCase::u_of_r(double r) const { return u_amplitude * std::pow(r, alpha); }

double RadialCase::f_of_r(double r) const { return f_amplitude * std::pow(r, f_exponent); }

double RadialCase::residual_of_r(double r) const {
  // exact radial Laplacian of c r^alpha minus the absorption term
  const double lap = u_amplitude * alpha * (alpha + n - 2.0) * std::pow(r, alpha - 2.0);
  const double src = gamma * f_of_r(r) * std::pow(u_of_r(r), gamma - 1.0);
  return lap - src;
}

RadialCase radial_exact_case(RadialKind kind, int n, double gamma, double p) {
  if (n < 1 || n > 3) throw std::invalid_argument("radial_exact_case: n must be in {1,2,3}");
  if (!(gamma > 0) || !(gamma < 1))
    throw std::invalid_argument("radial_exact_case: gamma must lie in (0,1)");

  RadialCase c;
  c.kind = kind;
  c.n = n;
  c.gamma = gamma;
  if (kind == RadialKind::PowerSource) {
    if (!(p > n / 2.0)) throw std::invalid_argument("radial_exact_case: p must exceed n/2");
    c.p = p;
    c.theta = (2.0 - n / p) / (2.0 - gamma);
    c.alpha = c.theta;
    c.f_exponent = c.alpha * (2.0 - gamma) - 2.0;
    if (std::fabs(c.f_exponent - (-n / p)) > 1e-14)
      throw std::runtime_error("radial_exact_case: exponent identity violated");
    c.f_amplitude = c.alpha * (n + c.alpha - 2.0);
    c.u_amplitude = std::pow(gamma, 1.0 / (2.0 - gamma));
  } else {
    c.p = std::numeric_limits<double>::infinity();
    c.alpha = 2.0 / (2.0 - gamma);
    c.theta = c.alpha;  // n/p = 0
    c.f_amplitude = 1.0;
    c.f_exponent = 0.0;
    c.u_amplitude = std::pow(gamma / (c.alpha * (c.alpha + n - 2.0)), 1.0 / (2.0 - gamma));
  }

  // numeric confirmation on a radius sweep
  for (int k = 1; k <= 1000; ++k) {
    const double r = static_cast<double>(k) / 1000.0;
    const double scale = std::max(1.0, std::fabs(gamma * c.f_of_r(r) *
                                                 std::pow(c.u_of_r(r), gamma - 1.0)));
    if (std::fabs(c.residual_of_r(r)) > 1e-10 * scale)
      throw std::runtime_error("radial_exact_case: substitution residual too large");
  }
  return c;
}

LorentzClassification lorentz_classification(double beta, int n, double p) {
  if (!(beta > 0)) throw std::invalid_argument("lorentz_classification: beta must be positive");
  LorentzClassification out;
  out.in_weak_lp = beta <= n / p + 1e-14;
  out.norm_if_member = out.in_weak_lp ? std::pow(unit_ball_volume(n), 1.0 / p)
                                      : std::numeric_limits<double>::quiet_NaN();
  return out;
}

double RadialProfile::at(double radius) const {
  if (r.empty()) return 0.0;
  if (radius <= r.front()) return u.front();
  if (radius >= r.back()) return u.back();
  auto it = std::upper_bound(r.begin(), r.end(), radius);
  const std::size_t i = static_cast<std::size_t>(it - r.begin());
  const double t = (radius - r[i - 1]) / (r[i] - r[i - 1]);
  return (1.0 - t) * u[i - 1] + t * u[i];
}

namespace {

double surface_measure(int n) {
  switch (n) {
    case 1: return 2.0;
    case 2: return 2.0 * std::numbers::pi;
    default: return 4.0 * std::numbers::pi;
  }
}

struct Shot {
  std::vector<double> r, u;
  double u1 = 0;       // value reached at r = 1
  bool died = false;   // u collapsed to zero before reaching the boundary
};

// integrate (u' = w / r^{n-1}, w' = r^{n-1} gamma f u^{gamma-1}) with RK4
Shot integrate_out(int n, double gamma, const std::function<double(double)>& f, double r_start,
                   double u_start, double w_start, int resolution) {
  Shot s;
  const double hr = 1.0 / resolution;
  auto pw = [&](double rr) { return std::pow(rr, n - 1.0); };
  auto du = [&](double rr, double ww) { return rr > 0 ? ww / pw(rr) : 0.0; };
  auto dw = [&](double rr, double uu) {
    return pw(rr) * gamma * f(rr) * std::pow(std::max(uu, 1e-300), gamma - 1.0);
  };

  double rr = r_start, uu = u_start, ww = w_start;
  s.r.push_back(rr);
  s.u.push_back(uu);
  while (rr < 1.0 - 1e-12) {
    const double step = std::min(hr, 1.0 - rr);
    const double k1u = du(rr, ww), k1w = dw(rr, uu);
    const double k2u = du(rr + step / 2, ww + step / 2 * k1w),
                 k2w = dw(rr + step / 2, uu + step / 2 * k1u);
    const double k3u = du(rr + step / 2, ww + step / 2 * k2w),
                 k3w = dw(rr + step / 2, uu + step / 2 * k2u);
    const double k4u = du(rr + step, ww + step * k3w), k4w = dw(rr + step, uu + step * k3u);
    uu += step / 6 * (k1u + 2 * k2u + 2 * k3u + k4u);
    ww += step / 6 * (k1w + 2 * k2w + 2 * k3w + k4w);
    rr += step;
    if (!(uu > 0) || !std::isfinite(uu)) {
      s.died = true;
      return s;
    }
    s.r.push_back(rr);
    s.u.push_back(uu);
  }
  s.u1 = uu;
  return s;
}

Shot shoot_core(int n, double gamma, const std::function<double(double)>& f, double s0,
                int resolution) {
  // contact asymptotics u ~ c0 (r-s0)^q with q = 2/(2-gamma)
  const double q = 2.0 / (2.0 - gamma);
  const double hr = 1.0 / resolution;
  const double delta = 2.0 * hr;
  const double fs = std::max(f(std::min(s0 + delta, 1.0)), 1e-300);
  const double c0 = std::pow(gamma * fs / (q * (q - 1.0)), 1.0 / (2.0 - gamma));
  const double r0 = s0 + delta;
  const double u0 = c0 * std::pow(delta, q);
  const double w0 = std::pow(r0, n - 1.0) * c0 * q * std::pow(delta, q - 1.0);
  return integrate_out(n, gamma, f, r0, u0, w0, resolution);
}

Shot shoot_positive(int n, double gamma, const std::function<double(double)>& f, double a,
                    int resolution) {
  const double hr = 1.0 / resolution;
  return integrate_out(n, gamma, f, hr / 2.0, a, 0.0, resolution);
}

RadialProfile shot_to_profile(const Shot& s, double core) {
  RadialProfile p;
  p.r = s.r;
  p.u = s.u;
  p.core_radius = core;
  p.has_core = core > 0;
  if (core > 0) {
    // prepend the dead region
    std::vector<double> r2, u2;
    const int m = 32;
    for (int i = 0; i < m; ++i) {
      r2.push_back(core * i / m);
      u2.push_back(0.0);
    }
    r2.insert(r2.end(), p.r.begin(), p.r.end());
    u2.insert(u2.end(), p.u.begin(), p.u.end());
    p.r = std::move(r2);
    p.u = std::move(u2);
  }
  return p;
}

}  // namespace

double radial_energy(int n, double gamma, const std::function<double(double)>& f_radial,
                     const RadialProfile& prof) {
  const double Sn = surface_measure(n);
  double total = 0;
  for (std::size_t i = 0; i + 1 < prof.r.size(); ++i) {
    const double dr = prof.r[i + 1] - prof.r[i];
    if (dr <= 0) continue;
    const double rm = 0.5 * (prof.r[i] + prof.r[i + 1]);
    const double um = 0.5 * (prof.u[i] + prof.u[i + 1]);
    const double up = (prof.u[i + 1] - prof.u[i]) / dr;
    const double upos = um > 0 ? um : 0.0;
    total += Sn * std::pow(rm, n - 1.0) *
             (0.5 * up * up + f_radial(rm) * std::pow(upos, gamma)) * dr;
  }
  return total;
}

RadialProfile radial_bvp_oracle(int n, double gamma, const std::function<double(double)>& f_radial,
                                double g1, int resolution) {
  if (g1 < 0) throw std::invalid_argument("radial_bvp_oracle: g1 must be nonnegative");
  if (n < 1 || n > 3) throw std::invalid_argument("radial_bvp_oracle: n must be in {1,2,3}");
  if (resolution < 64) throw std::invalid_argument("radial_bvp_oracle: resolution too small");

  if (g1 == 0.0) {
    RadialProfile p;
    const int m = 64;
    for (int i = 0; i <= m; ++i) {
      p.r.push_back(static_cast<double>(i) / m);
      p.u.push_back(0.0);
    }
    p.core_radius = 1.0;
    p.has_core = true;
    p.note = "zero boundary data";
    return p;
  }

  const double mismatch_tol = 1e-5 * std::max(1.0, g1);

  struct Candidate {
    RadialProfile profile;
    double mismatch;
    std::string kind;
  };
  std::vector<Candidate> candidates;

  auto core_mismatch = [&](double s) {
    Shot sh = shoot_core(n, gamma, f_radial, s, resolution);
    return sh.died ? -std::numeric_limits<double>::infinity() : sh.u1 - g1;
  };
  auto pos_mismatch = [&](double a) {
    Shot sh = shoot_positive(n, gamma, f_radial, a, resolution);
    return sh.died ? -std::numeric_limits<double>::infinity() : sh.u1 - g1;
  };

  // --- dead-core branch: bisection on the shooting mismatch over core radii
  {
    std::vector<double> sgrid{1e-9};
    for (int k = 1; k <= 39; ++k) sgrid.push_back(k / 40.0);
    std::vector<double> mm(sgrid.size());
    for (std::size_t i = 0; i < sgrid.size(); ++i) mm[i] = core_mismatch(sgrid[i]);
    for (std::size_t i = 0; i + 1 < sgrid.size(); ++i) {
      if (!std::isfinite(mm[i]) || !std::isfinite(mm[i + 1])) continue;
      if (mm[i] == 0 || (mm[i] > 0) != (mm[i + 1] > 0)) {
        double lo = sgrid[i], hi = sgrid[i + 1];
        double flo = mm[i];
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double fm = core_mismatch(mid);
          if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        const double s = 0.5 * (lo + hi);
        Shot sh = shoot_core(n, gamma, f_radial, s, resolution);
        if (!sh.died)
          candidates.push_back({shot_to_profile(sh, s), sh.u1 - g1, "core"});
      }
    }
    // degenerate core at the origin: the sup of u(1; s) is approached as s -> 0
    if (candidates.empty() && std::isfinite(mm[0]) && std::fabs(mm[0]) <= mismatch_tol) {
      Shot sh = shoot_core(n, gamma, f_radial, sgrid[0], resolution);
      if (!sh.died) candidates.push_back({shot_to_profile(sh, 0.0), mm[0], "core_origin"});
    }
  }

  // --- everywhere-positive branch: u'(0) = 0, bisection on the center value
  {
    std::vector<double> agrid;
    for (int k = 50; k >= 0; --k) agrid.push_back(g1 * std::pow(2.0, -k));
    std::vector<double> mm(agrid.size());
    for (std::size_t i = 0; i < agrid.size(); ++i) mm[i] = pos_mismatch(agrid[i]);
    for (std::size_t i = 0; i + 1 < agrid.size(); ++i) {
      if (!std::isfinite(mm[i]) || !std::isfinite(mm[i + 1])) continue;
      if (mm[i] == 0 || (mm[i] > 0) != (mm[i + 1] > 0)) {
        double lo = agrid[i], hi = agrid[i + 1];
        double flo = mm[i];
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double fm = pos_mismatch(mid);
          if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        const double a = 0.5 * (lo + hi);
        Shot sh = shoot_positive(n, gamma, f_radial, a, resolution);
        if (!sh.died) candidates.push_back({shot_to_profile(sh, 0.0), sh.u1 - g1, "positive"});
      }
    }
    // exact-contact limit: u(1; a -> 0) can reach g1 without a sign change
    if (std::isfinite(mm[0]) && std::fabs(mm[0]) <= mismatch_tol) {
      Shot sh = shoot_positive(n, gamma, f_radial, agrid[0], resolution);
      if (!sh.died) candidates.push_back({shot_to_profile(sh, 0.0), mm[0], "positive_limit"});
    }
  }

  if (candidates.empty())
    throw std::runtime_error("radial_bvp_oracle: no shooting solution bracketed");

  std::size_t best = 0;
  double best_energy = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (std::fabs(candidates[i].mismatch) > mismatch_tol &&
        std::fabs(candidates[i].mismatch) > std::fabs(candidates[best].mismatch))
      continue;
    const double e = radial_energy(n, gamma, f_radial, candidates[i].profile);
    if (e < best_energy) {
      best_energy = e;
      best = i;
    }
  }
  RadialProfile out = std::move(candidates[best].profile);
  out.boundary_mismatch = candidates[best].mismatch;
  out.note = candidates[best].kind == "positive" || candidates[best].kind == "positive_limit"
                 ? "no dead core in (0,1)"
                 : "dead core at r = " + std::to_string(out.core_radius);
  return out;
}

}  // namespace aplab
