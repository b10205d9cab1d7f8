#include "aplab/field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aplab {

void ScalarField::validate() const {
  for (double v : values)
    if (!std::isfinite(v))
      throw std::runtime_error("ScalarField '" + name + "' contains non-finite values");
}

ScalarField make_field(GridPtr grid, std::string name, double fill) {
  ScalarField f;
  f.grid = std::move(grid);
  f.name = std::move(name);
  f.values.assign(f.grid->cells, fill);
  return f;
}

ScalarField sample_field(GridPtr grid, std::string name,
                         const std::function<double(const Point&)>& fn) {
  ScalarField f = make_field(std::move(grid), std::move(name));
  for (std::size_t id = 0; id < f.grid->cells; ++id) f.values[id] = fn(f.grid->center(id));
  return f;
}

double singular_sample_floor(double h) { return std::pow(h, 0.55); }

std::array<double, 9> MatrixField::at(std::size_t id) const {
  std::array<double, 9> m{};
  const int d = grid->dim;
  if (is_identity) {
    for (int a = 0; a < d; ++a) m[a * 3 + a] = 1.0;
    return m;
  }
  const double* v = values.data() + id * sym_size();
  if (d == 1) {
    m[0] = v[0];
  } else if (d == 2) {
    m[0] = v[0]; m[1] = v[1];
    m[3] = v[1]; m[4] = v[2];
  } else {
    m[0] = v[0]; m[1] = v[1]; m[2] = v[2];
    m[3] = v[1]; m[4] = v[3]; m[5] = v[4];
    m[6] = v[2]; m[7] = v[4]; m[8] = v[5];
  }
  return m;
}

std::array<double, 2> MatrixField::eig_range(std::size_t id) const {
  const int d = grid->dim;
  if (is_identity) return {1.0, 1.0};
  const double* v = values.data() + id * sym_size();
  if (d == 1) return {v[0], v[0]};
  if (d == 2) {
    const double tr = v[0] + v[2];
    const double det = v[0] * v[2] - v[1] * v[1];
    double disc = tr * tr - 4.0 * det;
    disc = disc > 0 ? std::sqrt(disc) : 0.0;
    return {(tr - disc) / 2.0, (tr + disc) / 2.0};
  }
  // symmetric 3x3: trigonometric solution of the characteristic cubic
  const double a11 = v[0], a12 = v[1], a13 = v[2], a22 = v[3], a23 = v[4], a33 = v[5];
  const double q = (a11 + a22 + a33) / 3.0;
  const double b11 = a11 - q, b22 = a22 - q, b33 = a33 - q;
  const double p2 = b11 * b11 + b22 * b22 + b33 * b33 + 2.0 * (a12 * a12 + a13 * a13 + a23 * a23);
  if (p2 <= 0) return {q, q};
  const double p = std::sqrt(p2 / 6.0);
  // det(B)/2 with B = (A - qI)/p
  const double detB = (b11 * (b22 * b33 - a23 * a23) - a12 * (a12 * b33 - a23 * a13) +
                       a13 * (a12 * a23 - b22 * a13)) / (p * p * p);
  double r = detB / 2.0;
  r = std::min(1.0, std::max(-1.0, r));
  const double phi = std::acos(r) / 3.0;
  const double emax = q + 2.0 * p * std::cos(phi);
  const double emin = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  return {emin, emax};
}

void MatrixField::check_ellipticity(double tol) const {
  if (!(lambda > 0) || !(lambda <= Lambda))
    throw std::runtime_error("MatrixField: ellipticity bounds require 0 < lambda <= Lambda");
  if (is_identity) {
    if (lambda > 1.0 + tol || Lambda < 1.0 - tol)
      throw std::runtime_error("MatrixField: identity outside [lambda, Lambda]");
    return;
  }
  for (std::size_t id = 0; id < grid->cells; ++id) {
    auto [lo, hi] = eig_range(id);
    if (lo < lambda - tol || hi > Lambda + tol)
      throw std::runtime_error("MatrixField: cell eigenvalues escape [lambda, Lambda]");
  }
}

MatrixField identity_matrix_field(GridPtr grid) {
  MatrixField A;
  A.grid = std::move(grid);
  A.lambda = A.Lambda = 1.0;
  A.is_identity = true;
  return A;
}

MatrixField sample_matrix_field(GridPtr grid,
                                const std::function<void(const Point&, double*)>& fn,
                                double lambda, double Lambda) {
  MatrixField A;
  A.grid = std::move(grid);
  A.lambda = lambda;
  A.Lambda = Lambda;
  A.values.assign(A.grid->cells * A.sym_size(), 0.0);
  const int s = A.sym_size();
  for (std::size_t id = 0; id < A.grid->cells; ++id)
    fn(A.grid->center(id), A.values.data() + id * s);
  return A;
}

double integrate(const ScalarField& u, const CellMask& mask) {
  const GridDomain& g = *u.grid;
  double sum = 0;
  std::size_t count = 0;
  for (std::size_t id = 0; id < g.cells; ++id) {
    if (!mask[id] || !g.interior[id]) continue;
    sum += u.values[id];
    ++count;
  }
  if (count == 0) throw std::runtime_error("empty integration region");
  return sum * g.cell_volume();
}

double integrate(const ScalarField& u, const Region& region) {
  return integrate(u, make_mask(*u.grid, region));
}

std::vector<std::array<double, 3>> gradient(const ScalarField& u) {
  const GridDomain& g = *u.grid;
  const int res = g.resolution;
  const double h = g.cell_size;
  std::vector<std::array<double, 3>> grad(g.cells, {0, 0, 0});

  std::array<std::size_t, 3> stride{0, 0, 0};
  if (g.dim == 1) stride = {1, 0, 0};
  if (g.dim == 2) stride = {static_cast<std::size_t>(res), 1, 0};
  if (g.dim == 3) stride = {static_cast<std::size_t>(res) * res, static_cast<std::size_t>(res), 1};

  for (std::size_t id = 0; id < g.cells; ++id) {
    if (!g.interior[id]) continue;
    auto c = g.coords(id);
    for (int a = 0; a < g.dim; ++a) {
      const bool has_m = c[a] > 0 && g.interior[id - stride[a]];
      const bool has_p = c[a] < res - 1 && g.interior[id + stride[a]];
      if (has_m && has_p)
        grad[id][a] = (u.values[id + stride[a]] - u.values[id - stride[a]]) / (2.0 * h);
      else if (has_p)
        grad[id][a] = (u.values[id + stride[a]] - u.values[id]) / h;
      else if (has_m)
        grad[id][a] = (u.values[id] - u.values[id - stride[a]]) / h;
    }
  }
  return grad;
}

}  // namespace aplab
