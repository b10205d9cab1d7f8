#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "aplab/grid.hpp"

namespace aplab {

// Sampled scalar function on the full bounding box of a GridDomain.
// Quadrature only ever touches interior cells; box cells outside the ball
// carry extension values so finite-difference stencils stay defined.
struct ScalarField {
  GridPtr grid;
  std::string name;
  std::vector<double> values;
  bool singular_sampled = false; // cell-center sampling of an unbounded source

  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }

  // throws if any value is non-finite
  void validate() const;
};

ScalarField make_field(GridPtr grid, std::string name, double fill = 0.0);
ScalarField sample_field(GridPtr grid, std::string name,
                         const std::function<double(const Point&)>& fn);

// Radius clamp used when sampling power-law singularities at cell centers.
// The floor shrinks with h but grows in cell units (h^0.55), so level sets of
// the sampled source stay lattice-resolved while the clamp vanishes in the
// continuum limit.
double singular_sample_floor(double h);

// Symmetric matrix coefficient field with certified ellipticity bounds.
struct MatrixField {
  GridPtr grid;
  double lambda = 1.0;
  double Lambda = 1.0;
  bool is_identity = false;
  std::vector<double> values; // cells * dim*(dim+1)/2, row-major upper triangle

  int sym_size() const { return grid->dim * (grid->dim + 1) / 2; }

  // full dim x dim matrix of cell id
  std::array<double, 9> at(std::size_t id) const;

  // eigenvalue range of the cell matrix (closed form, dim <= 3)
  std::array<double, 2> eig_range(std::size_t id) const;

  // verify every cell's eigenvalues lie in [lambda, Lambda]; throws otherwise
  void check_ellipticity(double tol = 1e-10) const;
};

MatrixField identity_matrix_field(GridPtr grid);
MatrixField sample_matrix_field(GridPtr grid,
                                const std::function<void(const Point&, double*)>& fn,
                                double lambda, double Lambda);

// quadrature-weighted sum over cells of `mask`
double integrate(const ScalarField& u, const CellMask& mask);
double integrate(const ScalarField& u, const Region& region);

// Per-cell gradient samples: second-order central differences where both
// axis neighbors are interior, one-sided in the boundary band, zero outside.
std::vector<std::array<double, 3>> gradient(const ScalarField& u);

}  // namespace aplab
