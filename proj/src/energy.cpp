#include "aplab/energy.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace aplab {

double ProblemParams::n_over_p() const {
  if (std::isinf(p)) return 0.0;
  return static_cast<double>(grid->dim) / p;
}

void ProblemParams::validate() const {
  if (!(gamma > 0) || !(gamma < 1))
    throw std::invalid_argument("ProblemParams: gamma must lie in (0,1)");
  if (!std::isinf(p) && !(p > grid->dim / 2.0))
    throw std::invalid_argument("ProblemParams: p must exceed n/2 (or be +inf)");
  A.check_ellipticity();
  f.validate();
  g.validate();
  bool nonzero = false;
  for (std::size_t id = 0; id < grid->cells; ++id) {
    if (!grid->band[id]) continue;
    if (g.values[id] < 0)
      throw std::invalid_argument("ProblemParams: boundary data must be nonnegative");
    if (g.values[id] > 0) nonzero = true;
  }
  if (!nonzero)
    throw std::invalid_argument("ProblemParams: boundary data must not vanish identically");
}

void ScalingTransform::validate() const {
  if (!(rho > 0) || !(rho <= 1))
    throw std::invalid_argument("ScalingTransform: rho must lie in (0,1]");
  if (!(kappa > 0)) throw std::invalid_argument("ScalingTransform: kappa must be positive");
  double c = 0;
  for (double v : center) c += v * v;
  c = std::sqrt(c);
  if (rho * (1.0 + c) > 1.0 + 1e-12 || c + rho > 1.0 + 1e-12)
    throw std::invalid_argument("ScalingTransform: rescaled ball escapes the domain");
}

// ---------------------------------------------------------------------------
// Q1 element tables: shape-function gradients at tensor Gauss points, in
// reference coordinates on [0,1]^dim. D[gp][corner][axis] has an implicit 1/h.
namespace {

struct Q1Tables {
  int dim = 0;
  int n_gp = 0;       // 2^dim
  int n_corner = 0;   // 2^dim
  double D[8][8][3];  // [gp][corner][axis]
};

Q1Tables make_tables(int dim) {
  Q1Tables t;
  t.dim = dim;
  t.n_gp = 1 << dim;
  t.n_corner = 1 << dim;
  const double gl = 0.5 - 0.5 / std::sqrt(3.0);
  const double gr = 0.5 + 0.5 / std::sqrt(3.0);
  for (int gp = 0; gp < t.n_gp; ++gp) {
    double xi[3];
    for (int a = 0; a < dim; ++a) xi[a] = ((gp >> a) & 1) ? gr : gl;
    for (int c = 0; c < t.n_corner; ++c) {
      for (int a = 0; a < dim; ++a) {
        double v = 1.0;
        for (int b = 0; b < dim; ++b) {
          const int bit = (c >> b) & 1;
          if (b == a)
            v *= bit ? 1.0 : -1.0;
          else
            v *= bit ? xi[b] : 1.0 - xi[b];
        }
        t.D[gp][c][a] = v;
      }
    }
  }
  return t;
}

// iterate over elements: base cell index with all +1 neighbors in the box
template <typename F>
void for_each_element(const GridDomain& g, const Region& region, F&& body) {
  const int res = g.resolution;
  const double h = g.cell_size;
  const int nb = res - 1;
  std::size_t corner_off[8];
  const std::size_t sx = (g.dim == 1) ? 1 : (g.dim == 2 ? static_cast<std::size_t>(res) : static_cast<std::size_t>(res) * res);
  const std::size_t sy = (g.dim == 3) ? static_cast<std::size_t>(res) : 1;
  const std::size_t sz = 1;
  const int nc = 1 << g.dim;
  for (int c = 0; c < nc; ++c) {
    std::size_t off = 0;
    if (c & 1) off += sx;
    if (c & 2) off += sy;
    if (c & 4) off += sz;
    corner_off[c] = off;
  }

  Point x{0, 0, 0};
  if (g.dim == 1) {
    for (int i = 0; i < nb; ++i) {
      x[0] = g.axis_center(i) + h / 2;
      if (region.contains(x)) body(g.index(i), corner_off);
    }
  } else if (g.dim == 2) {
    for (int i = 0; i < nb; ++i) {
      x[0] = g.axis_center(i) + h / 2;
      for (int j = 0; j < nb; ++j) {
        x[1] = g.axis_center(j) + h / 2;
        if (region.contains(x)) body(g.index(i, j), corner_off);
      }
    }
  } else {
    for (int i = 0; i < nb; ++i) {
      x[0] = g.axis_center(i) + h / 2;
      for (int j = 0; j < nb; ++j) {
        x[1] = g.axis_center(j) + h / 2;
        for (int k = 0; k < nb; ++k) {
          x[2] = g.axis_center(k) + h / 2;
          if (region.contains(x)) body(g.index(i, j, k), corner_off);
        }
      }
    }
  }
}

void element_matrix(const MatrixField& A, std::size_t base, const std::size_t* corner_off,
                    const Q1Tables& t, double scale, double* Ae) {
  // cell-averaged coefficients per element
  const int d = t.dim;
  if (A.is_identity) {
    Ae[0] = Ae[4] = Ae[8] = scale;
    Ae[1] = Ae[2] = Ae[3] = Ae[5] = Ae[6] = Ae[7] = 0;
    (void)d;
    return;
  }
  double m[9] = {0};
  for (int c = 0; c < t.n_corner; ++c) {
    auto mc = A.at(base + corner_off[c]);
    for (int i = 0; i < 9; ++i) m[i] += mc[i];
  }
  const double s = scale / t.n_corner;
  for (int i = 0; i < 9; ++i) Ae[i] = m[i] * s;
}

}  // namespace

double dirichlet_energy(const MatrixField& A, const ScalarField& u, const Region& region) {
  const GridDomain& g = *u.grid;
  const Q1Tables t = make_tables(g.dim);
  const double h = g.cell_size;
  const double wgp = g.cell_volume() / t.n_gp;
  double total = 0;

  for_each_element(g, region, [&](std::size_t base, const std::size_t* off) {
    double Ae[9];
    element_matrix(A, base, off, t, 1.0, Ae);
    double uv[8];
    for (int c = 0; c < t.n_corner; ++c) uv[c] = u.values[base + off[c]];
    for (int gp = 0; gp < t.n_gp; ++gp) {
      double gr[3] = {0, 0, 0};
      for (int c = 0; c < t.n_corner; ++c)
        for (int a = 0; a < t.dim; ++a) gr[a] += t.D[gp][c][a] * uv[c];
      for (int a = 0; a < t.dim; ++a) gr[a] /= h;
      double q = 0;
      for (int a = 0; a < t.dim; ++a) {
        double Ag = 0;
        for (int b = 0; b < t.dim; ++b) Ag += Ae[a * 3 + b] * gr[b];
        q += Ag * gr[a];
      }
      total += 0.5 * wgp * q;
    }
  });
  return total;
}

void accumulate_dirichlet_gradient(const MatrixField& A, const ScalarField& u,
                                   const Region& region, std::vector<double>& grad) {
  const GridDomain& g = *u.grid;
  const Q1Tables t = make_tables(g.dim);
  const double h = g.cell_size;
  const double wgp = g.cell_volume() / t.n_gp;

  for_each_element(g, region, [&](std::size_t base, const std::size_t* off) {
    double Ae[9];
    element_matrix(A, base, off, t, 1.0, Ae);
    double uv[8];
    for (int c = 0; c < t.n_corner; ++c) uv[c] = u.values[base + off[c]];
    for (int gp = 0; gp < t.n_gp; ++gp) {
      double gr[3] = {0, 0, 0};
      for (int c = 0; c < t.n_corner; ++c)
        for (int a = 0; a < t.dim; ++a) gr[a] += t.D[gp][c][a] * uv[c];
      for (int a = 0; a < t.dim; ++a) gr[a] /= h;
      double Ag[3] = {0, 0, 0};
      for (int a = 0; a < t.dim; ++a)
        for (int b = 0; b < t.dim; ++b) Ag[a] += Ae[a * 3 + b] * gr[b];
      const double s = wgp / h;
      for (int c = 0; c < t.n_corner; ++c) {
        double dv = 0;
        for (int a = 0; a < t.dim; ++a) dv += Ag[a] * t.D[gp][c][a];
        grad[base + off[c]] += s * dv;
      }
    }
  });
}

double dirichlet_energy_and_gradient(const MatrixField& A, const ScalarField& u,
                                     const Region& region, std::vector<double>& grad) {
  const GridDomain& g = *u.grid;
  const Q1Tables t = make_tables(g.dim);
  const double h = g.cell_size;
  const double wgp = g.cell_volume() / t.n_gp;
  double total = 0;

  for_each_element(g, region, [&](std::size_t base, const std::size_t* off) {
    double Ae[9];
    element_matrix(A, base, off, t, 1.0, Ae);
    double uv[8];
    for (int c = 0; c < t.n_corner; ++c) uv[c] = u.values[base + off[c]];
    for (int gp = 0; gp < t.n_gp; ++gp) {
      double gr[3] = {0, 0, 0};
      for (int c = 0; c < t.n_corner; ++c)
        for (int a = 0; a < t.dim; ++a) gr[a] += t.D[gp][c][a] * uv[c];
      for (int a = 0; a < t.dim; ++a) gr[a] /= h;
      double Ag[3] = {0, 0, 0};
      double q = 0;
      for (int a = 0; a < t.dim; ++a) {
        for (int b = 0; b < t.dim; ++b) Ag[a] += Ae[a * 3 + b] * gr[b];
        q += Ag[a] * gr[a];
      }
      total += 0.5 * wgp * q;
      const double s = wgp / h;
      for (int c = 0; c < t.n_corner; ++c) {
        double dv = 0;
        for (int a = 0; a < t.dim; ++a) dv += Ag[a] * t.D[gp][c][a];
        grad[base + off[c]] += s * dv;
      }
    }
  });
  return total;
}

std::vector<double> dirichlet_diagonal(const MatrixField& A, const Region& region) {
  const GridDomain& g = *A.grid;
  const Q1Tables t = make_tables(g.dim);
  const double h = g.cell_size;
  const double wgp = g.cell_volume() / t.n_gp;
  std::vector<double> diag(g.cells, 0.0);

  for_each_element(g, region, [&](std::size_t base, const std::size_t* off) {
    double Ae[9];
    element_matrix(A, base, off, t, 1.0, Ae);
    for (int gp = 0; gp < t.n_gp; ++gp) {
      for (int c = 0; c < t.n_corner; ++c) {
        double q = 0;
        for (int a = 0; a < t.dim; ++a) {
          double Ag = 0;
          for (int b = 0; b < t.dim; ++b) Ag += Ae[a * 3 + b] * t.D[gp][c][b];
          q += Ag * t.D[gp][c][a];
        }
        diag[base + off[c]] += wgp / (h * h) * q;
      }
    }
  });
  return diag;
}

// ---------------------------------------------------------------------------

double phi_eps(double u, double gamma, double eps) {
  const double up = u > 0 ? u : 0.0;
  return std::pow(up * up + eps * eps, gamma / 2.0) - std::pow(eps, gamma);
}

double phi_eps_prime(double u, double gamma, double eps) {
  if (u <= 0) return 0.0;
  return gamma * u * std::pow(u * u + eps * eps, gamma / 2.0 - 1.0);
}

double energy(const ProblemParams& params, const ScalarField& u, const Region& region) {
  u.validate();
  const GridDomain& g = *u.grid;
  double total = dirichlet_energy(params.A, u, region);
  const double w = g.cell_volume();
  for (std::size_t id = 0; id < g.cells; ++id) {
    if (!g.interior[id] || !region.contains(g.center(id))) continue;
    const double up = u.values[id] > 0 ? u.values[id] : 0.0;
    if (up > 0) total += w * params.f.values[id] * std::pow(up, params.gamma);
  }
  if (!std::isfinite(total)) throw std::runtime_error("energy: non-finite result");
  return total;
}

double energy(const ProblemParams& params, const ScalarField& u) {
  return energy(params, u, Region::full());
}

double smoothed_energy(const ProblemParams& params, const ScalarField& u, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("smoothed_energy: eps must be positive");
  const GridDomain& g = *u.grid;
  double total = dirichlet_energy(params.A, u, Region::full());
  const double w = g.cell_volume();
  for (std::size_t id = 0; id < g.cells; ++id) {
    if (!g.interior[id]) continue;
    total += w * params.f.values[id] * phi_eps(u.values[id], params.gamma, eps);
  }
  return total;
}

SmoothedGradient smoothed_energy_gradient(const ProblemParams& params, const ScalarField& u,
                                          double eps) {
  if (!(eps > 0)) throw std::invalid_argument("smoothed_energy_gradient: eps must be positive");
  const GridDomain& g = *u.grid;
  SmoothedGradient out;
  out.grad = make_field(u.grid, "grad_" + u.name);

  out.value = dirichlet_energy_and_gradient(params.A, u, Region::full(), out.grad.values);

  const double w = g.cell_volume();
  for (std::size_t id = 0; id < g.cells; ++id) {
    if (!g.interior[id]) continue;
    const double fv = params.f.values[id];
    out.value += w * fv * phi_eps(u.values[id], params.gamma, eps);
    out.grad.values[id] += w * fv * phi_eps_prime(u.values[id], params.gamma, eps);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// erode a mask by one full (Chebyshev) ring of cells
CellMask erode(const GridDomain& g, const CellMask& m) {
  CellMask out(g.cells, 0);
  const int res = g.resolution;
  for (std::size_t id = 0; id < g.cells; ++id) {
    if (!m[id]) continue;
    auto c = g.coords(id);
    bool keep = true;
    const int lo[3] = {std::max(c[0] - 1, 0), std::max(c[1] - 1, 0), std::max(c[2] - 1, 0)};
    const int hi[3] = {std::min(c[0] + 1, res - 1), std::min(c[1] + 1, res - 1),
                       std::min(c[2] + 1, res - 1)};
    if (c[0] == 0 || c[0] == res - 1) keep = false;
    if (g.dim > 1 && (c[1] == 0 || c[1] == res - 1)) keep = false;
    if (g.dim > 2 && (c[2] == 0 || c[2] == res - 1)) keep = false;
    for (int i = lo[0]; keep && i <= hi[0]; ++i)
      for (int j = (g.dim > 1 ? lo[1] : 0); keep && j <= (g.dim > 1 ? hi[1] : 0); ++j)
        for (int k = (g.dim > 2 ? lo[2] : 0); keep && k <= (g.dim > 2 ? hi[2] : 0); ++k)
          if (!m[g.index(i, j, k)]) keep = false;
    if (keep) out[id] = 1;
  }
  return out;
}

}  // namespace

ElResidualReport el_residual(const ProblemParams& params, const ScalarField& u, double t_pos) {
  if (!(t_pos > 0)) throw std::invalid_argument("el_residual: t_pos must be positive");
  const GridDomain& g = *u.grid;

  CellMask pos(g.cells, 0);
  for (std::size_t id = 0; id < g.cells; ++id)
    if (g.interior[id] && u.values[id] > t_pos) pos[id] = 1;
  CellMask core = erode(g, erode(g, pos));

  ElResidualReport rep;
  rep.residual = make_field(u.grid, "el_residual");
  rep.region = core;
  rep.cell_count = mask_count(core);
  if (rep.cell_count == 0) {
    rep.empty = true;
    return rep;
  }

  std::vector<double> Ku(g.cells, 0.0);
  accumulate_dirichlet_gradient(params.A, u, Region::full(), Ku);
  const double w = g.cell_volume();
  double l2 = 0;
  for (std::size_t id = 0; id < g.cells; ++id) {
    if (!core[id]) continue;
    const double div_term = -Ku[id] / w;
    const double src = params.gamma * params.f.values[id] *
                       std::pow(u.values[id], params.gamma - 1.0);
    const double r = div_term - src;
    rep.residual.values[id] = r;
    rep.max_norm = std::max(rep.max_norm, std::fabs(r));
    l2 += w * r * r;
  }
  rep.l2_norm = std::sqrt(l2);
  return rep;
}

// ---------------------------------------------------------------------------
// sparse CG on the Dirichlet-form system

namespace {

struct Csr {
  std::vector<int> ptr, col;
  std::vector<double> val;
  int n = 0;
};

void spmv(const Csr& m, const std::vector<double>& x, std::vector<double>& y) {
  for (int i = 0; i < m.n; ++i) {
    double s = 0;
    for (int k = m.ptr[i]; k < m.ptr[i + 1]; ++k) s += m.val[k] * x[m.col[k]];
    y[i] = s;
  }
}

}  // namespace

LinearSolveStats solve_dirichlet_system(const MatrixField& A, ScalarField& u,
                                        const std::vector<std::uint8_t>& unknown,
                                        double rel_tol) {
  const GridDomain& g = *u.grid;
  const Q1Tables t = make_tables(g.dim);
  const double h = g.cell_size;
  const double wgp = g.cell_volume() / t.n_gp;

  std::vector<int> eq(g.cells, -1);
  int n = 0;
  for (std::size_t id = 0; id < g.cells; ++id)
    if (unknown[id]) eq[id] = n++;
  if (n == 0) return {};

  // element stiffness assembled into per-row maps (rows are small)
  std::vector<std::vector<std::pair<int, double>>> rows(n);
  std::vector<double> rhs(n, 0.0);
  auto add = [&](int r, int c, double v) {
    for (auto& e : rows[r])
      if (e.first == c) {
        e.second += v;
        return;
      }
    rows[r].emplace_back(c, v);
  };

  const Region full = Region::full();
  for_each_element(g, full, [&](std::size_t base, const std::size_t* off) {
    bool touches = false;
    for (int c = 0; c < t.n_corner; ++c)
      if (eq[base + off[c]] >= 0) touches = true;
    if (!touches) return;

    double Ae[9];
    element_matrix(A, base, off, t, 1.0, Ae);
    double ke[8][8] = {};
    for (int gp = 0; gp < t.n_gp; ++gp) {
      double Ag[8][3];
      for (int c = 0; c < t.n_corner; ++c)
        for (int a = 0; a < t.dim; ++a) {
          double s = 0;
          for (int b = 0; b < t.dim; ++b) s += Ae[a * 3 + b] * t.D[gp][c][b];
          Ag[c][a] = s;
        }
      for (int c = 0; c < t.n_corner; ++c)
        for (int d2 = 0; d2 < t.n_corner; ++d2) {
          double s = 0;
          for (int a = 0; a < t.dim; ++a) s += Ag[c][a] * t.D[gp][d2][a];
          ke[c][d2] += wgp / (h * h) * s;
        }
    }
    for (int c = 0; c < t.n_corner; ++c) {
      const int rc = eq[base + off[c]];
      if (rc < 0) continue;
      for (int d2 = 0; d2 < t.n_corner; ++d2) {
        const std::size_t cell = base + off[d2];
        const int cc = eq[cell];
        if (cc >= 0)
          add(rc, cc, ke[c][d2]);
        else
          rhs[rc] -= ke[c][d2] * u.values[cell];
      }
    }
  });

  Csr m;
  m.n = n;
  m.ptr.resize(n + 1, 0);
  for (int i = 0; i < n; ++i) m.ptr[i + 1] = m.ptr[i] + static_cast<int>(rows[i].size());
  m.col.resize(m.ptr[n]);
  m.val.resize(m.ptr[n]);
  for (int i = 0; i < n; ++i) {
    int k = m.ptr[i];
    for (auto& e : rows[i]) {
      m.col[k] = e.first;
      m.val[k] = e.second;
      ++k;
    }
  }

  // Jacobi-preconditioned CG
  std::vector<double> x(n, 0.0), r(rhs), z(n), pvec(n), Ap(n), dinv(n);
  for (int i = 0; i < n; ++i) {
    double d = 1.0;
    for (int k = m.ptr[i]; k < m.ptr[i + 1]; ++k)
      if (m.col[k] == i) d = m.val[k];
    dinv[i] = d > 0 ? 1.0 / d : 1.0;
  }
  auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (int i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
  };
  double bnorm = std::sqrt(dot(rhs, rhs));
  if (bnorm == 0) bnorm = 1.0;
  for (int i = 0; i < n; ++i) z[i] = dinv[i] * r[i];
  pvec = z;
  double rz = dot(r, z);
  LinearSolveStats stats;
  const int itmax = std::max(200, 20 * n);
  double rnorm = std::sqrt(dot(r, r));
  int it = 0;
  while (rnorm / bnorm > rel_tol && it < itmax) {
    spmv(m, pvec, Ap);
    const double alpha = rz / dot(pvec, Ap);
    for (int i = 0; i < n; ++i) {
      x[i] += alpha * pvec[i];
      r[i] -= alpha * Ap[i];
    }
    for (int i = 0; i < n; ++i) z[i] = dinv[i] * r[i];
    const double rz2 = dot(r, z);
    const double beta = rz2 / rz;
    rz = rz2;
    for (int i = 0; i < n; ++i) pvec[i] = z[i] + beta * pvec[i];
    rnorm = std::sqrt(dot(r, r));
    ++it;
  }
  stats.iterations = it;
  stats.rel_residual = rnorm / bnorm;
  if (stats.rel_residual > rel_tol)
    throw std::runtime_error("solve_dirichlet_system: CG stalled, relative residual " +
                             std::to_string(stats.rel_residual));

  for (std::size_t id = 0; id < g.cells; ++id)
    if (eq[id] >= 0) u.values[id] = x[eq[id]];
  return stats;
}

ScalarField harmonic_replacement(const MatrixField& A, const ScalarField& u, const Point& x0,
                                 double R) {
  const GridDomain& g = *u.grid;
  if (2.0 * g.cell_size > R)
    throw std::invalid_argument("harmonic_replacement: ball must span at least two cells");
  double c = 0;
  for (int a = 0; a < g.dim; ++a) c += x0[a] * x0[a];
  if (std::sqrt(c) + R > 1.0)
    throw std::invalid_argument("harmonic_replacement: ball escapes the unit ball");

  ScalarField out = u;
  out.name = u.name + "_replaced";
  std::vector<std::uint8_t> unknown(g.cells, 0);
  std::size_t cnt = 0;
  for (std::size_t id = 0; id < g.cells; ++id)
    if (g.interior[id] && dist(g.center(id), x0) < R) {
      unknown[id] = 1;
      ++cnt;
    }
  if (cnt == 0) throw std::runtime_error("harmonic_replacement: ball contains no cells");
  solve_dirichlet_system(A, out, unknown);
  return out;
}

// ---------------------------------------------------------------------------

double interp_field(const ScalarField& f, const Point& x) {
  const GridDomain& g = *f.grid;
  const int res = g.resolution;
  const double h = g.cell_size;
  int base_i[3] = {0, 0, 0};
  double frac[3] = {0, 0, 0};
  for (int a = 0; a < g.dim; ++a) {
    double s = (x[a] + 1.0) / h - 0.5;  // center lattice coordinate
    s = std::min(std::max(s, 0.0), static_cast<double>(res - 1));
    int i0 = static_cast<int>(std::floor(s));
    i0 = std::min(i0, res - 2);
    base_i[a] = i0;
    frac[a] = s - i0;
  }
  double acc = 0;
  const int nc = 1 << g.dim;
  for (int cidx = 0; cidx < nc; ++cidx) {
    double wgt = 1.0;
    int ii[3] = {base_i[0], base_i[1], base_i[2]};
    for (int a = 0; a < g.dim; ++a) {
      const int bit = (cidx >> a) & 1;
      wgt *= bit ? frac[a] : 1.0 - frac[a];
      ii[a] += bit;
    }
    acc += wgt * f.values[g.index(ii[0], ii[1], ii[2])];
  }
  return acc;
}

RescaledProblem rescale_problem(const ProblemParams& params, const ScalarField& u,
                                const ScalingTransform& t) {
  t.validate();
  const GridDomain& g = *params.grid;
  const double scale_f = std::pow(t.kappa, 2.0 - params.gamma) * t.rho * t.rho;

  auto pullback = [&](const Point& y) {
    Point x;
    for (int a = 0; a < 3; ++a) x[a] = t.center[a] + t.rho * y[a];
    return x;
  };

  RescaledProblem out;
  out.params.grid = params.grid;
  out.params.gamma = params.gamma;
  out.params.p = params.p;

  out.params.f = make_field(params.grid, params.f.name + "_rescaled");
  out.params.g = make_field(params.grid, params.g.name + "_rescaled");
  out.u = make_field(params.grid, u.name + "_rescaled");
  out.params.f.singular_sampled = params.f.singular_sampled;
  for (std::size_t id = 0; id < g.cells; ++id) {
    const Point y = g.center(id);
    const Point x = pullback(y);
    out.params.f.values[id] = scale_f * interp_field(params.f, x);
    const double uval = t.kappa * interp_field(u, x);
    out.u.values[id] = uval;
    out.params.g.values[id] = uval;  // rescaled trace
  }

  if (params.A.is_identity) {
    out.params.A = identity_matrix_field(params.grid);
  } else {
    MatrixField An;
    An.grid = params.grid;
    An.lambda = params.A.lambda;
    An.Lambda = params.A.Lambda;
    const int s = params.A.sym_size();
    An.values.assign(g.cells * s, 0.0);
    // interpolate each symmetric component; convex combinations of SPD
    // matrices keep the eigenvalue bounds
    std::vector<ScalarField> comp(s);
    for (int c = 0; c < s; ++c) {
      comp[c] = make_field(params.grid, "Ac");
      for (std::size_t id = 0; id < g.cells; ++id)
        comp[c].values[id] = params.A.values[id * s + c];
    }
    for (std::size_t id = 0; id < g.cells; ++id) {
      const Point x = pullback(g.center(id));
      for (int c = 0; c < s; ++c) An.values[id * s + c] = interp_field(comp[c], x);
    }
    out.params.A = std::move(An);
  }
  return out;
}

}  // namespace aplab
