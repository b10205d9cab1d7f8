#include "aplab/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aplab {

double unit_ball_volume(int dim) {
  switch (dim) {
    case 1: return 2.0;
    case 2: return std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi / 3.0;
    default: throw std::invalid_argument("unit_ball_volume: dim must be in {1,2,3}");
  }
}

double GridDomain::cell_volume() const {
  double w = cell_size;
  for (int a = 1; a < dim; ++a) w *= cell_size;
  return w;
}

GridPtr build_ball_grid(int dim, int resolution) {
  if (dim < 1 || dim > 3)
    throw std::invalid_argument("build_ball_grid: dim must be in {1,2,3}");
  if (resolution < 8)
    throw std::invalid_argument("build_ball_grid: resolution must be >= 8");
  if (resolution % 2 != 0)
    throw std::invalid_argument(
        "build_ball_grid: resolution must be even (odd resolutions place a cell center at the origin)");

  auto g = std::make_shared<GridDomain>();
  g->dim = dim;
  g->resolution = resolution;
  g->cell_size = 2.0 / resolution;
  std::size_t n = 1;
  for (int a = 0; a < dim; ++a) n *= static_cast<std::size_t>(resolution);
  g->cells = n;
  g->interior.assign(n, 0);
  g->band.assign(n, 0);

  const double h = g->cell_size;
  for (std::size_t id = 0; id < n; ++id) {
    const double r = g->radius(id);
    if (r < 1.0) {
      g->interior[id] = 1;
      if (r > 1.0 - h) g->band[id] = 1;
    }
  }
  return g;
}

bool Region::contains(const Point& x) const {
  switch (kind) {
    case Kind::Full: {
      double s = 0;
      for (int i = 0; i < 3; ++i) s += x[i] * x[i];
      return s < 1.0;
    }
    case Kind::Ball: return dist(x, center) < r0;
    case Kind::Annulus: {
      double d = dist(x, center);
      return d >= r0 && d < r1;
    }
  }
  return false;
}

CellMask make_mask(const GridDomain& g, const Region& region) {
  CellMask m(g.cells, 0);
  for (std::size_t id = 0; id < g.cells; ++id)
    if (g.interior[id] && region.contains(g.center(id))) m[id] = 1;
  return m;
}

CellMask interior_mask(const GridDomain& g) { return g.interior; }

double mask_measure(const GridDomain& g, const CellMask& mask) {
  std::size_t c = 0;
  for (auto b : mask) c += b;
  return static_cast<double>(c) * g.cell_volume();
}

std::size_t mask_count(const CellMask& mask) {
  std::size_t c = 0;
  for (auto b : mask) c += b;
  return c;
}

}  // namespace aplab
