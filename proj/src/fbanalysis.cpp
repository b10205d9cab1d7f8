#include "aplab/fbanalysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace aplab {

PositivitySet positivity_set(const ScalarField& u, double t_pos) {
  if (!(t_pos > 0)) throw std::invalid_argument("positivity_set: t_pos must be positive");
  const GridDomain& g = *u.grid;
  PositivitySet out;
  out.mask.assign(g.cells, 0);
  for (std::size_t id = 0; id < g.cells; ++id)
    if (g.interior[id] && u.values[id] > t_pos) out.mask[id] = 1;

  const int res = g.resolution;
  std::size_t stride[3] = {0, 0, 0};
  if (g.dim == 1) stride[0] = 1;
  if (g.dim == 2) { stride[0] = static_cast<std::size_t>(res); stride[1] = 1; }
  if (g.dim == 3) {
    stride[0] = static_cast<std::size_t>(res) * res;
    stride[1] = static_cast<std::size_t>(res);
    stride[2] = 1;
  }
  for (std::size_t id = 0; id < g.cells; ++id) {
    if (!out.mask[id]) continue;
    auto c = g.coords(id);
    bool fb = false;
    for (int a = 0; a < g.dim && !fb; ++a) {
      if (c[a] > 0) {
        const std::size_t nb = id - stride[a];
        if (g.interior[nb] && !out.mask[nb]) fb = true;
      }
      if (c[a] < res - 1) {
        const std::size_t nb = id + stride[a];
        if (g.interior[nb] && !out.mask[nb]) fb = true;
      }
    }
    if (fb) out.fb_cells.push_back(id);
  }
  return out;
}

ExponentFit growth_fit(const ScalarField& u, const Point& x0, SupMode mode,
                       const std::vector<double>& radii, double target, double tol,
                       FitCheck check) {
  const GridDomain& g = *u.grid;
  const double h = g.cell_size;

  ExponentFit fit;
  fit.target = target;
  fit.tol = tol;
  for (double r : radii) {
    if (r < 4.0 * h)
      throw std::invalid_argument("growth_fit: radii must be at least 4h");
    double sup = -std::numeric_limits<double>::infinity();
    for (std::size_t id = 0; id < g.cells; ++id) {
      if (!g.interior[id]) continue;
      const double d = dist(g.center(id), x0);
      const bool in = mode == SupMode::BallSup ? d <= r : std::fabs(d - r) <= h;
      if (in) sup = std::max(sup, u.values[id]);
    }
    if (sup > 0)
      fit.radii.push_back(r), fit.values.push_back(sup);
    else
      fit.dropped.push_back(r);
  }
  if (fit.radii.size() < 5)
    throw std::runtime_error("growth_fit: fewer than 5 usable radii");

  // normalize by the first sample so positive rescaling cancels exactly
  const std::size_t m = fit.radii.size();
  std::vector<double> x(m), y(m);
  for (std::size_t i = 0; i < m; ++i) {
    x[i] = std::log(fit.radii[i] / fit.radii[0]);
    y[i] = std::log(fit.values[i] / fit.values[0]);
  }
  double xm = 0, ym = 0;
  for (std::size_t i = 0; i < m; ++i) { xm += x[i]; ym += y[i]; }
  xm /= m;
  ym /= m;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - xm) * (x[i] - xm);
    sxy += (x[i] - xm) * (y[i] - ym);
    syy += (y[i] - ym) * (y[i] - ym);
  }
  fit.slope = sxy / sxx;
  fit.r2 = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  fit.reliable = fit.r2 >= 0.98;
  switch (check) {
    case FitCheck::TwoSided: fit.pass = std::fabs(fit.slope - target) <= tol; break;
    case FitCheck::AtLeast: fit.pass = fit.slope >= target - tol; break;
    case FitCheck::AtMost: fit.pass = fit.slope <= target + tol; break;
  }
  return fit;
}

FBReport density_report(const ScalarField& u, const Point& y0, const std::vector<double>& radii) {
  const GridDomain& g = *u.grid;
  FBReport rep;
  rep.y0 = y0;

  double y0n = 0;
  for (int a = 0; a < g.dim; ++a) y0n += y0[a] * y0[a];
  y0n = std::sqrt(y0n);

  for (double r : radii) {
    DensityEntry e;
    e.r = r;
    e.clipped = y0n + r > 1.0;
    double inside = 0, positive = 0;
    for (std::size_t id = 0; id < g.cells; ++id) {
      if (!g.interior[id]) continue;
      if (dist(g.center(id), y0) > r) continue;
      inside += 1.0;
      if (u.values[id] > 0) positive += 1.0;
    }
    if (inside == 0) continue;
    e.density = positive / inside;
    rep.per_radius.push_back(e);
  }
  if (rep.per_radius.empty()) throw std::runtime_error("density_report: no usable radii");

  rep.min_density = 1.0;
  bool clipped_any = false;
  for (auto& e : rep.per_radius) {
    rep.min_density = std::min(rep.min_density, e.density);
    clipped_any = clipped_any || e.clipped;
  }
  if (clipped_any) rep.note = "balls clipped to the unit ball";

  // monotone decay toward zero across increasing radii is a theory-violation alarm
  bool monotone_down = rep.per_radius.size() >= 3;
  for (std::size_t i = 0; i + 1 < rep.per_radius.size() && monotone_down; ++i)
    if (rep.per_radius[i + 1].density > rep.per_radius[i].density * (1.0 - 1e-12))
      monotone_down = false;
  rep.degradation_alarm = monotone_down && rep.per_radius.back().density < 0.01;
  return rep;
}

OscillationDecay oscillation_decay(const ScalarField& u, const Point& x0,
                                   const std::vector<double>& radii) {
  const GridDomain& g = *u.grid;
  OscillationDecay out;
  for (double r : radii) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t id = 0; id < g.cells; ++id) {
      if (!g.interior[id] || dist(g.center(id), x0) > r) continue;
      lo = std::min(lo, u.values[id]);
      hi = std::max(hi, u.values[id]);
    }
    if (hi >= lo) {
      out.radii.push_back(r);
      out.osc.push_back(hi - lo);
    }
  }
  out.monotone = true;
  // radii are expected largest-to-smallest or sorted; compare by radius order
  std::vector<std::size_t> order(out.radii.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return out.radii[a] < out.radii[b]; });
  for (std::size_t i = 0; i + 1 < order.size(); ++i)
    if (out.osc[order[i]] > out.osc[order[i + 1]] + 1e-14) out.monotone = false;
  return out;
}

double hausdorff_distance(const std::vector<Point>& a, const std::vector<Point>& b) {
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  double worst = 0;
  auto one_sided = [&](const std::vector<Point>& from, const std::vector<Point>& to) {
    double w = 0;
    for (const auto& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : to) best = std::min(best, dist(p, q));
      w = std::max(w, best);
    }
    return w;
  };
  worst = std::max(one_sided(a, b), one_sided(b, a));
  return worst;
}

std::vector<double> dyadic_radii(double r_max, double r_min) {
  std::vector<double> out;
  for (double r = r_max; r >= r_min * (1.0 - 1e-12); r /= 2.0) out.push_back(r);
  return out;
}

}  // namespace aplab
