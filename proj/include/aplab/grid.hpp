#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

namespace aplab {

using Point = std::array<double, 3>;

inline double dist(const Point& a, const Point& b) {
  double s = 0;
  for (int i = 0; i < 3; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// Volume of the unit ball in R^n, n <= 3.
double unit_ball_volume(int dim);

// Cell-centered tensor grid on the box [-1,1]^dim masking the unit ball.
// Cell centers sit at (i+1/2)h - 1 per axis; with even resolution no center
// hits the origin, so power-law sources stay finite at every sample point.
struct GridDomain {
  int dim = 0;
  int resolution = 0;   // cells per axis
  double cell_size = 0; // h = 2/resolution
  std::size_t cells = 0;

  std::vector<std::uint8_t> interior; // center strictly inside B_1
  std::vector<std::uint8_t> band;     // interior cells within h of the sphere

  std::size_t index(int i, int j = 0, int k = 0) const {
    std::size_t id = static_cast<std::size_t>(i);
    if (dim > 1) id = id * resolution + j;
    if (dim > 2) id = id * resolution + k;
    return id;
  }

  std::array<int, 3> coords(std::size_t id) const {
    std::array<int, 3> c{0, 0, 0};
    if (dim == 1) {
      c[0] = static_cast<int>(id);
    } else if (dim == 2) {
      c[1] = static_cast<int>(id % resolution);
      c[0] = static_cast<int>(id / resolution);
    } else {
      c[2] = static_cast<int>(id % resolution);
      std::size_t rest = id / resolution;
      c[1] = static_cast<int>(rest % resolution);
      c[0] = static_cast<int>(rest / resolution);
    }
    return c;
  }

  double axis_center(int i) const { return (i + 0.5) * cell_size - 1.0; }

  Point center(std::size_t id) const {
    auto c = coords(id);
    Point x{0, 0, 0};
    for (int a = 0; a < dim; ++a) x[a] = axis_center(c[a]);
    return x;
  }

  double radius(std::size_t id) const {
    Point x = center(id);
    double s = 0;
    for (int a = 0; a < dim; ++a) s += x[a] * x[a];
    return std::sqrt(s);
  }

  double cell_volume() const;
  double weight(std::size_t id) const { return interior[id] ? cell_volume() : 0.0; }

  bool is_free(std::size_t id) const { return interior[id] && !band[id]; }
};

using GridPtr = std::shared_ptr<const GridDomain>;

// Builds the masked ball grid. Rejects odd resolutions (a cell center would
// land on the origin) and dimensions outside {1,2,3}.
GridPtr build_ball_grid(int dim, int resolution);

// Geometric integration regions (membership tested at cell centers).
struct Region {
  enum class Kind { Full, Ball, Annulus };
  Kind kind = Kind::Full;
  Point center{0, 0, 0};
  double r0 = 0, r1 = 0;

  static Region full() { return {}; }
  static Region ball(const Point& c, double r) { return {Kind::Ball, c, r, 0}; }
  static Region annulus(const Point& c, double rin, double rout) {
    return {Kind::Annulus, c, rin, rout};
  }

  bool contains(const Point& x) const;
};

using CellMask = std::vector<std::uint8_t>;

CellMask make_mask(const GridDomain& g, const Region& region);
CellMask interior_mask(const GridDomain& g);
double mask_measure(const GridDomain& g, const CellMask& mask);
std::size_t mask_count(const CellMask& mask);

}  // namespace aplab
